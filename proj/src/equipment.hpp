#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace acmpc::equipment {

struct PerformanceRow {
    double t_wb_c = 0;      // indoor (coil inlet) wet-bulb, degC
    double t_out_c = 0;     // outdoor dry-bulb, degC
    double sensible_kw = 0; // sensible cooling capacity
    double total_kw = 0;    // total cooling capacity
    double power_kw = 0;    // electrical input
};
using PerformanceTable = std::vector<PerformanceRow>;

PerformanceTable read_performance_csv(const std::string& path);
void write_performance_csv(const PerformanceTable& table, const std::string& path);

struct Range {
    double lo = 0;
    double hi = 0;
    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

// COP here is total cooling over electrical power, so that electrical
// power follows from the sensible rate as P = q_sensible / (SHR * COP).

// Quadratic in outdoor dry-bulb only.
struct CopMapSensible {
    std::array<double, 3> coeff{};  // 1, t_out, t_out^2
    Range t_out_range;
    double r2 = 0;

    double value(double t_out) const {
        return coeff[0] + coeff[1] * t_out + coeff[2] * t_out * t_out;
    }
};

// Full bivariate quadratic in (indoor wet-bulb, outdoor dry-bulb).
struct CopMapLatent {
    std::array<double, 6> coeff{};  // 1, wb, out, wb^2, wb*out, out^2
    Range t_wb_range;
    Range t_out_range;
    double reference_t_db = 24.0;  // indoor dry-bulb the table was taken at
    double r2 = 0;

    double value(double t_wb, double t_out) const {
        return coeff[0] + coeff[1] * t_wb + coeff[2] * t_out + coeff[3] * t_wb * t_wb +
               coeff[4] * t_wb * t_out + coeff[5] * t_out * t_out;
    }
};

using CopMap = std::variant<CopMapSensible, CopMapLatent>;

enum class CopForm { Sensible, Latent };

// Least-squares polynomial fit of COP against the table. Fits violating the
// positivity or monotonicity invariants over the table's range are rejected.
CopMap fit_cop(const PerformanceTable& table, CopForm form);

struct CopEval {
    double value = 0;
    bool clamped = false;  // inputs fell outside the fitted range
};

// Polynomial evaluation with clamp-to-range semantics. A latent map
// requires t_wb.
CopEval cop_eval(const CopMap& map, double t_out, std::optional<double> t_wb = std::nullopt);
double cop(const CopMap& map, double t_out, std::optional<double> t_wb = std::nullopt);

// Sensible heat ratio model: constant, or linear in the coil inlet
// wet-bulb. Output is always clamped into (0, 1] (floor 0.05).
struct ShrModel {
    enum class Kind { Constant, Linear } kind = Kind::Constant;
    double value = 0.86;  // constant variant
    double a = 0;         // 1/degC
    double b = 0;

    static ShrModel constant(double v);
    static ShrModel linear(double a, double b);
};

double shr(const ShrModel& model, double t_wb);

struct ShrFit {
    ShrModel model;
    double r2 = 0;
    double rmse = 0;
};

// Linear regression of sensible/total on t_wb.
ShrFit fit_shr(const PerformanceTable& table);

}  // namespace acmpc::equipment
