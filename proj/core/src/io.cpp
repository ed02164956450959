#include "javelin/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "javelin/error.hpp"

namespace javelin {
namespace {

constexpr std::array<const char*, 6> kProfileColumns = {"s", "a", "b", "phi", "y", "s2y"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

[[noreturn]] void bad_profile(const std::string& detail) {
    throw numerical_error("profile-format", "profile CSV rejected: " + detail,
                          make_error_record("profile-format", detail));
}

}  // namespace

void save_profile(const BeamProfile& profile, const std::string& path) {
    profile.validate();
    std::ofstream out = open_out(path);
    out << "s,a,b,phi,y,s2y\n";
    for (const ProfileSample& p : profile.samples) {
        out << fmt(p.s) << ',' << fmt(p.a) << ',' << fmt(p.b) << ',' << fmt(p.phi) << ','
            << fmt(p.y) << ',' << fmt(p.s * p.s * p.y) << '\n';
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

BeamProfile load_profile(const std::string& path, std::optional<double> lambda_override) {
    std::ifstream in(path);
    if (!in) bad_profile("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) bad_profile("empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv(line);
    for (std::size_t i = 0; i < kProfileColumns.size(); ++i) {
        if (i >= header.size() || header[i] != kProfileColumns[i]) {
            bad_profile("expected column " + std::to_string(i + 1) + " to be '" +
                        kProfileColumns[i] + "', got '" + (i < header.size() ? header[i] : "") +
                        "'");
        }
    }
    if (header.size() != kProfileColumns.size()) {
        bad_profile("unexpected extra column '" + header[kProfileColumns.size()] + "'");
    }

    BeamProfile profile;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != kProfileColumns.size()) {
            bad_profile("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                        " fields, expected 6");
        }
        double v[6];
        for (std::size_t i = 0; i < 6; ++i) {
            try {
                std::size_t used = 0;
                v[i] = std::stod(fields[i], &used);
                if (used != fields[i].size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                bad_profile("row " + std::to_string(row) + " column '" +
                            kProfileColumns[i] + "' is not a number: '" + fields[i] + "'");
            }
        }
        if (!profile.samples.empty() && !(v[0] > profile.samples.back().s)) {
            bad_profile("row " + std::to_string(row) + ": s must be strictly increasing");
        }
        if (v[1] < 0.0) {
            bad_profile("row " + std::to_string(row) + ": negative tapering a");
        }
        profile.samples.push_back(ProfileSample{v[0], v[1], v[2], v[3], v[4]});
    }
    if (profile.samples.size() < 2) bad_profile("fewer than 2 samples");

    if (lambda_override) {
        profile.lambda = *lambda_override;
    } else {
        // At the tip a -> (lambda^2 / 72) s^4; the innermost sample of a
        // solver profile sits deep inside that regime.
        const ProfileSample& tip = profile.samples.front();
        if (!(tip.s > 0.0) || !(tip.a > 0.0)) {
            bad_profile("cannot infer lambda: first sample needs s > 0 and a > 0");
        }
        profile.lambda = std::sqrt(72.0 * tip.a / (tip.s * tip.s * tip.s * tip.s));
    }
    profile.validate();
    return profile;
}

std::string summary_json(const SolveResult& result) {
    const SolveDiagnostics& d = result.diagnostics;
    std::string json = "{\n";
    json += "  \"lambda\": " + fmt(result.lambda) + ",\n";
    json += "  \"theta_star\": " + fmt(result.theta_star) + ",\n";
    json += "  \"theta_star_negative\": " + fmt(result.theta_star - 6.283185307179586) + ",\n";
    json += "  \"delta_t\": " + fmt(result.delta_t) + ",\n";
    json += "  \"volume\": " + fmt(d.volume) + ",\n";
    json += "  \"residuals\": {\n";
    json += "    \"as_residual_max\": " + fmt(d.as_residual_max) + ",\n";
    json += "    \"optimality_residual\": " + fmt(d.optimality_residual) + ",\n";
    json += "    \"euler_residual\": " + fmt(d.euler_residual) + ",\n";
    json += "    \"volume_error\": " + fmt(std::abs(d.volume - 1.0)) + ",\n";
    json += "    \"b_end\": " + fmt(d.b_end) + "\n";
    json += "  }\n";
    json += "}\n";
    return json;
}

std::string verify_json(double lambda_oracle, double lambda_input, int rigid_modes) {
    std::string json = "{\n";
    json += "  \"lambda_oracle\": " + fmt(lambda_oracle) + ",\n";
    json += "  \"lambda_input\": " + fmt(lambda_input) + ",\n";
    json += "  \"relative_gap\": " + fmt((lambda_oracle - lambda_input) / lambda_input) + ",\n";
    json += "  \"rigid_modes\": " + std::to_string(rigid_modes) + "\n";
    json += "}\n";
    return json;
}

void write_mode_csv(const CylinderMode& mode, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "s,y\n";
    for (std::size_t i = 0; i < mode.s.size(); ++i) {
        out << fmt(mode.s[i]) << ',' << fmt(mode.y[i]) << '\n';
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

void write_sweep_csv(const std::vector<ShotOutcome>& outcomes, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "theta,dt_g1_first,dt_g2_first,diverged\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const ShotOutcome& o : outcomes) {
        out << fmt(o.theta) << ',' << fmt(o.g1_times.empty() ? nan : o.g1_times.front()) << ','
            << fmt(o.g2_times.empty() ? nan : o.g2_times.front()) << ','
            << (o.diverged ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out = open_out(path);
    out << text;
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace javelin
