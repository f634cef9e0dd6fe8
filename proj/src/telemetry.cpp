#include "telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "error.hpp"

namespace acmpc {

namespace {

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw_data("non-numeric value '" + s + "' in column '" + col + "', data row " +
                   std::to_string(row));
    }
}

}  // namespace

std::string to_iso8601(TimePoint t) {
    std::int64_t days = t.epoch_seconds / 86400;
    std::int64_t rem = t.epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    const int hh = static_cast<int>(rem / 3600);
    const int mm = static_cast<int>((rem % 3600) / 60);
    const int ss = static_cast<int>(rem % 60);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", y, m, d, hh, mm, ss);
    return buf;
}

TimePoint parse_iso8601(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    char sep = 0;
    const int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%lf", &y, &mo, &d, &sep, &h, &mi, &sec);
    if (n < 3 || mo < 1 || mo > 12 || d < 1 || d > 31)
        throw_data("unparseable ISO-8601 timestamp '" + s + "'");
    if (n >= 4 && sep != 'T' && sep != ' ')
        throw_data("unparseable ISO-8601 timestamp '" + s + "'");
    TimePoint t;
    t.epoch_seconds = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 +
                      static_cast<std::int64_t>(sec);
    return t;
}

double hour_of_day(TimePoint t) {
    std::int64_t rem = t.epoch_seconds % 86400;
    if (rem < 0) rem += 86400;
    return static_cast<double>(rem) / 3600.0;
}

std::int64_t day_index(TimePoint t) {
    std::int64_t days = t.epoch_seconds / 86400;
    if (t.epoch_seconds % 86400 < 0) days -= 1;
    return days;
}

TimePoint add_hours(TimePoint t, double hours) {
    return TimePoint{t.epoch_seconds + static_cast<std::int64_t>(std::llround(hours * 3600.0))};
}

void write_telemetry_csv(const TelemetryLog& log, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw_io("cannot open '" + path + "' for writing");
    f << "timestamp,t_in,t_out,q_cool_kw,p_kw,rh_in,rh_out,"
         "t_wb_return,setpoint,q_latent_kw,shr_realized\n";
    for (const auto& r : log.records) {
        f << to_iso8601(r.t) << ',' << fmt_num(r.t_in) << ',' << fmt_num(r.t_out) << ','
          << fmt_num(r.q_cool_kw) << ',' << fmt_num(r.p_kw) << ',' << fmt_num(r.rh_in) << ','
          << fmt_num(r.rh_out) << ',' << fmt_num(r.t_wb_return) << ',' << fmt_num(r.setpoint)
          << ',' << fmt_num(r.q_latent_kw) << ',' << fmt_num(r.shr_realized) << '\n';
    }
    f << "# controller_errors=" << log.controller_errors << "\n";
    if (!f) throw_io("failed writing '" + path + "'");
}

TelemetryLog read_telemetry_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_io("cannot open telemetry file '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw_data("telemetry file '" + path + "' is empty");
    auto header = split_csv_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;

    for (const char* required : {"timestamp", "t_in", "t_out", "q_cool_kw"})
        if (!col.count(required))
            throw_data("telemetry file '" + path + "' missing required column '" +
                       std::string(required) + "'");

    auto get = [&](const std::vector<std::string>& cells, const char* name, std::size_t row,
                   double fallback) {
        auto it = col.find(name);
        if (it == col.end() || it->second >= cells.size() || cells[it->second].empty())
            return fallback;
        return parse_number(cells[it->second], row, name);
    };

    TelemetryLog log;
    std::size_t row = 0;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("controller_errors=");
            if (pos != std::string::npos)
                log.controller_errors = std::atoi(line.c_str() + pos + 18);
            continue;
        }
        auto cells = split_csv_line(line);
        TelemetryRecord r;
        const auto ts = col["timestamp"];
        if (ts >= cells.size()) throw_data("short row " + std::to_string(row) + " in '" + path + "'");
        r.t = parse_iso8601(cells[ts]);
        r.t_in = get(cells, "t_in", row, 0.0);
        r.t_out = get(cells, "t_out", row, 0.0);
        r.q_cool_kw = get(cells, "q_cool_kw", row, 0.0);
        r.p_kw = get(cells, "p_kw", row, 0.0);
        r.rh_in = get(cells, "rh_in", row, std::nan(""));
        r.rh_out = get(cells, "rh_out", row, std::nan(""));
        r.t_wb_return = get(cells, "t_wb_return", row, std::nan(""));
        r.setpoint = get(cells, "setpoint", row, std::nan(""));
        r.q_latent_kw = get(cells, "q_latent_kw", row, 0.0);
        r.shr_realized = get(cells, "shr_realized", row, 1.0);
        log.records.push_back(r);
    }
    if (log.records.size() >= 2) {
        log.dt_hours =
            static_cast<double>(log.records[1].t.epoch_seconds - log.records[0].t.epoch_seconds) /
            3600.0;
        for (std::size_t i = 1; i < log.records.size(); ++i) {
            const double dt = static_cast<double>(log.records[i].t.epoch_seconds -
                                                  log.records[i - 1].t.epoch_seconds) /
                              3600.0;
            if (std::fabs(dt - log.dt_hours) > 1e-9)
                throw_data("telemetry file '" + path + "' has a non-uniform time step at data row " +
                           std::to_string(i + 1));
        }
    }
    return log;
}

void write_weather_csv(const std::vector<WeatherRecord>& series, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw_io("cannot open '" + path + "' for writing");
    f << "timestamp,t_out_c,rh_out,ghi_kw_m2,wind_m_s\n";
    for (const auto& r : series) {
        f << to_iso8601(r.t) << ',' << fmt_num(r.t_out_c) << ',' << fmt_num(r.rh_out) << ','
          << fmt_num(r.ghi_kw_m2) << ',' << fmt_num(r.wind_m_s) << '\n';
    }
    if (!f) throw_io("failed writing '" + path + "'");
}

std::vector<WeatherRecord> read_weather_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_io("cannot open weather file '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw_data("weather file '" + path + "' is empty");
    auto header = split_csv_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* required : {"timestamp", "t_out_c", "rh_out", "ghi_kw_m2", "wind_m_s"})
        if (!col.count(required))
            throw_data("weather file '" + path + "' missing required column '" +
                       std::string(required) + "'");

    std::vector<WeatherRecord> out;
    std::size_t row = 0;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (cells.size() < header.size())
            throw_data("short row " + std::to_string(row) + " in '" + path + "'");
        WeatherRecord r;
        r.t = parse_iso8601(cells[col["timestamp"]]);
        r.t_out_c = parse_number(cells[col["t_out_c"]], row, "t_out_c");
        r.rh_out = parse_number(cells[col["rh_out"]], row, "rh_out");
        r.ghi_kw_m2 = parse_number(cells[col["ghi_kw_m2"]], row, "ghi_kw_m2");
        r.wind_m_s = parse_number(cells[col["wind_m_s"]], row, "wind_m_s");
        out.push_back(r);
    }
    return out;
}

TelemetryLog hourly_downsample(const TelemetryLog& log) {
    if (log.dt_hours >= 1.0 - 1e-9) return log;
    const int per_hour = static_cast<int>(std::llround(1.0 / log.dt_hours));
    if (per_hour < 1 || std::fabs(per_hour * log.dt_hours - 1.0) > 1e-9)
        throw_data("hourly_downsample: step does not divide one hour");
    TelemetryLog out;
    out.dt_hours = 1.0;
    out.controller_errors = log.controller_errors;
    out.label = log.label;
    const std::size_t hours = log.records.size() / per_hour;
    for (std::size_t h = 0; h < hours; ++h) {
        const auto& first = log.records[h * per_hour];
        TelemetryRecord r = first;  // states sampled at hour start
        double q = 0, p = 0, ql = 0, shr = 0;
        for (int i = 0; i < per_hour; ++i) {
            const auto& s = log.records[h * per_hour + i];
            q += s.q_cool_kw;
            p += s.p_kw;
            ql += s.q_latent_kw;
            shr += s.shr_realized;
        }
        r.q_cool_kw = q / per_hour;
        r.p_kw = p / per_hour;
        r.q_latent_kw = ql / per_hour;
        r.shr_realized = shr / per_hour;
        out.records.push_back(r);
    }
    return out;
}

}  // namespace acmpc
