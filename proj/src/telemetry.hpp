#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace acmpc {

// Calendar time, seconds since the Unix epoch, no time zone. Timestamps in
// CSV files are ISO-8601 ("2023-07-01T14:00:00").
struct TimePoint {
    std::int64_t epoch_seconds = 0;

    friend auto operator<=>(const TimePoint&, const TimePoint&) = default;
};

std::string to_iso8601(TimePoint t);
TimePoint parse_iso8601(const std::string& s);

// Hour of day including the fractional part, e.g. 14.5 for 14:30.
double hour_of_day(TimePoint t);
// Days since epoch, for grouping records into days.
std::int64_t day_index(TimePoint t);
TimePoint add_hours(TimePoint t, double hours);

struct TelemetryRecord {
    TimePoint t;
    double t_in = 0;            // indoor dry-bulb, degC
    double t_out = 0;           // outdoor dry-bulb, degC
    double q_cool_kw = 0;       // sensible cooling rate, kW
    double p_kw = 0;            // heat pump electrical power, kW
    double rh_in = 0;           // indoor relative humidity, fraction
    double rh_out = 0;          // outdoor relative humidity, fraction
    double t_wb_return = 0;     // return air wet-bulb, degC
    double setpoint = 0;        // commanded set-point, degC
    double q_latent_kw = 0;     // latent cooling rate, kW
    double shr_realized = 1.0;  // realized sensible heat ratio
};

struct TelemetryLog {
    std::vector<TelemetryRecord> records;
    double dt_hours = 1.0;
    int controller_errors = 0;
    std::string label;

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
};

struct WeatherRecord {
    TimePoint t;
    double t_out_c = 0;
    double rh_out = 0;     // fraction 0..1
    double ghi_kw_m2 = 0;  // global horizontal irradiance
    double wind_m_s = 0;
};

// Telemetry CSV schema: header required, first seven columns are the
// ingestion schema shared with identification; the rest are simulator
// extras and may be absent on read.
//   timestamp,t_in,t_out,q_cool_kw,p_kw,rh_in,rh_out,
//   t_wb_return,setpoint,q_latent_kw,shr_realized
void write_telemetry_csv(const TelemetryLog& log, const std::string& path);
TelemetryLog read_telemetry_csv(const std::string& path);

// Weather CSV schema: timestamp,t_out_c,rh_out,ghi_kw_m2,wind_m_s
// (an extra lead_time_h column is tolerated for forecast files).
void write_weather_csv(const std::vector<WeatherRecord>& series, const std::string& path);
std::vector<WeatherRecord> read_weather_csv(const std::string& path);

// Collapse a fine-grained log to hourly cadence: states sampled at the top
// of the hour, rates averaged over the hour. Identification requires the
// hourly view.
TelemetryLog hourly_downsample(const TelemetryLog& log);

}  // namespace acmpc
