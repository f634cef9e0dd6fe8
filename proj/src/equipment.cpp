#include "equipment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "error.hpp"
#include "linalg.hpp"

namespace acmpc::equipment {

namespace {

constexpr double kShrFloor = 0.05;

double r_squared(const std::vector<double>& y, const std::vector<double>& resid) {
    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_tot += (y[i] - mean) * (y[i] - mean);
        ss_res += resid[i] * resid[i];
    }
    if (ss_tot <= 0) return 1.0;
    return 1.0 - ss_res / ss_tot;
}

Range make_range(const PerformanceTable& t, double PerformanceRow::*field) {
    Range r{t.front().*field, t.front().*field};
    for (const auto& row : t) {
        r.lo = std::min(r.lo, row.*field);
        r.hi = std::max(r.hi, row.*field);
    }
    return r;
}

}  // namespace

PerformanceTable read_performance_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_io("cannot open performance table '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw_data("performance table '" + path + "' is empty");
    std::stringstream hs(line);
    std::string name;
    std::map<std::string, std::size_t> col;
    std::size_t i = 0;
    while (std::getline(hs, name, ',')) col[name] = i++;
    for (const char* c : {"t_wb_c", "t_out_c", "sensible_kw", "total_kw", "power_kw"})
        if (!col.count(c))
            throw_data("performance table '" + path + "' missing column '" + std::string(c) + "'");

    PerformanceTable table;
    std::size_t row = 0;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::vector<double> cells;
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                cells.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw_data("non-numeric cell '" + cell + "' in performance table row " +
                           std::to_string(row));
            }
        }
        if (cells.size() < col.size())
            throw_data("short row " + std::to_string(row) + " in performance table");
        PerformanceRow r;
        r.t_wb_c = cells[col["t_wb_c"]];
        r.t_out_c = cells[col["t_out_c"]];
        r.sensible_kw = cells[col["sensible_kw"]];
        r.total_kw = cells[col["total_kw"]];
        r.power_kw = cells[col["power_kw"]];
        table.push_back(r);
    }
    return table;
}

void write_performance_csv(const PerformanceTable& table, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw_io("cannot open '" + path + "' for writing");
    f << "t_wb_c,t_out_c,sensible_kw,total_kw,power_kw\n";
    char buf[160];
    for (const auto& r : table) {
        std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f,%.4f,%.4f\n", r.t_wb_c, r.t_out_c,
                      r.sensible_kw, r.total_kw, r.power_kw);
        f << buf;
    }
    if (!f) throw_io("failed writing '" + path + "'");
}

CopMap fit_cop(const PerformanceTable& table, CopForm form) {
    if (table.size() < 10)
        throw_data("fit_cop: need at least 10 performance rows, got " +
                   std::to_string(table.size()));
    std::vector<double> cop_obs;
    cop_obs.reserve(table.size());
    for (const auto& r : table) {
        if (!(r.power_kw > 0)) throw_data("fit_cop: non-positive power in performance row");
        cop_obs.push_back(r.total_kw / r.power_kw);
    }

    if (form == CopForm::Sensible) {
        linalg::Matrix x(table.size(), 3);
        for (std::size_t i = 0; i < table.size(); ++i) {
            const double t = table[i].t_out_c;
            x.at(i, 0) = 1.0;
            x.at(i, 1) = t;
            x.at(i, 2) = t * t;
        }
        auto ls = linalg::least_squares(x, cop_obs);
        if (ls.rank < 3) throw_data("fit_cop: outdoor temperatures do not span a quadratic");
        CopMapSensible m;
        m.coeff = {ls.coeffs[0], ls.coeffs[1], ls.coeffs[2]};
        m.t_out_range = make_range(table, &PerformanceRow::t_out_c);
        m.r2 = r_squared(cop_obs, ls.residuals);
        // Invariants over the fitted range: positive, decreasing in t_out.
        for (int i = 0; i <= 40; ++i) {
            const double t = m.t_out_range.lo +
                             (m.t_out_range.hi - m.t_out_range.lo) * i / 40.0;
            if (m.value(t) <= 0)
                throw_data("fit_cop: fitted sensible COP non-positive at t_out=" +
                           std::to_string(t));
            if (m.coeff[1] + 2.0 * m.coeff[2] * t >= 0)
                throw_data("fit_cop: fitted sensible COP not decreasing at t_out=" +
                           std::to_string(t));
        }
        return m;
    }

    linalg::Matrix x(table.size(), 6);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double wb = table[i].t_wb_c, to = table[i].t_out_c;
        x.at(i, 0) = 1.0;
        x.at(i, 1) = wb;
        x.at(i, 2) = to;
        x.at(i, 3) = wb * wb;
        x.at(i, 4) = wb * to;
        x.at(i, 5) = to * to;
    }
    auto ls = linalg::least_squares(x, cop_obs);
    if (ls.rank < 6)
        throw_data("fit_cop: performance rows do not span a bivariate quadratic (rank " +
                   std::to_string(ls.rank) + " of 6)");
    CopMapLatent m;
    for (int i = 0; i < 6; ++i) m.coeff[i] = ls.coeffs[i];
    m.t_wb_range = make_range(table, &PerformanceRow::t_wb_c);
    m.t_out_range = make_range(table, &PerformanceRow::t_out_c);
    m.r2 = r_squared(cop_obs, ls.residuals);
    for (int i = 0; i <= 20; ++i) {
        const double wb = m.t_wb_range.lo + (m.t_wb_range.hi - m.t_wb_range.lo) * i / 20.0;
        for (int j = 0; j <= 20; ++j) {
            const double to = m.t_out_range.lo + (m.t_out_range.hi - m.t_out_range.lo) * j / 20.0;
            if (m.value(wb, to) <= 0)
                throw_data("fit_cop: fitted latent COP non-positive inside the table range");
            if (m.coeff[2] + m.coeff[4] * wb + 2.0 * m.coeff[5] * to >= 0)
                throw_data("fit_cop: fitted latent COP not decreasing in t_out at t_wb=" +
                           std::to_string(wb));
        }
    }
    return m;
}

CopEval cop_eval(const CopMap& map, double t_out, std::optional<double> t_wb) {
    CopEval out;
    if (const auto* s = std::get_if<CopMapSensible>(&map)) {
        const double t = s->t_out_range.clamp(t_out);
        out.clamped = !s->t_out_range.contains(t_out);
        out.value = s->value(t);
        return out;
    }
    const auto& l = std::get<CopMapLatent>(map);
    if (!t_wb) throw_invalid("cop: latent COP map requires a wet-bulb temperature");
    const double wb = l.t_wb_range.clamp(*t_wb);
    const double to = l.t_out_range.clamp(t_out);
    out.clamped = !l.t_wb_range.contains(*t_wb) || !l.t_out_range.contains(t_out);
    out.value = l.value(wb, to);
    return out;
}

double cop(const CopMap& map, double t_out, std::optional<double> t_wb) {
    return cop_eval(map, t_out, t_wb).value;
}

ShrModel ShrModel::constant(double v) {
    if (!(v > 0.0 && v <= 1.0)) throw_invalid("ShrModel: constant SHR must be in (0, 1]");
    ShrModel m;
    m.kind = Kind::Constant;
    m.value = v;
    return m;
}

ShrModel ShrModel::linear(double a, double b) {
    ShrModel m;
    m.kind = Kind::Linear;
    m.a = a;
    m.b = b;
    return m;
}

double shr(const ShrModel& model, double t_wb) {
    const double raw = model.kind == ShrModel::Kind::Constant ? model.value
                                                              : model.a * t_wb + model.b;
    return std::clamp(raw, kShrFloor, 1.0);
}

ShrFit fit_shr(const PerformanceTable& table) {
    if (table.size() < 5)
        throw_data("fit_shr: need at least 5 performance rows, got " +
                   std::to_string(table.size()));
    std::vector<double> shr_obs;
    for (const auto& r : table) {
        if (!(r.total_kw > 0)) throw_data("fit_shr: non-positive total cooling rate in a row");
        if (r.sensible_kw > r.total_kw + 1e-12)
            throw_data("fit_shr: sensible rate exceeds total rate in a row (t_wb=" +
                       std::to_string(r.t_wb_c) + ")");
        shr_obs.push_back(r.sensible_kw / r.total_kw);
    }
    linalg::Matrix x(table.size(), 2);
    for (std::size_t i = 0; i < table.size(); ++i) {
        x.at(i, 0) = table[i].t_wb_c;
        x.at(i, 1) = 1.0;
    }
    auto ls = linalg::least_squares(x, shr_obs);
    if (ls.rank < 2)
        throw_data("fit_shr: all rows share one wet-bulb temperature; slope not identifiable");
    ShrFit fit;
    fit.model = ShrModel::linear(ls.coeffs[0], ls.coeffs[1]);
    fit.r2 = r_squared(shr_obs, ls.residuals);
    double ss = 0;
    for (double r : ls.residuals) ss += r * r;
    fit.rmse = std::sqrt(ss / static_cast<double>(table.size()));
    return fit;
}

}  // namespace acmpc::equipment
