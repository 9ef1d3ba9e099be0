#include <wdvv/cli/manifest.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace wdvv::cli {

bool Manifest::passed() const {
    if (stopped) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

const CheckRecord* Manifest::find(const std::string& id) const {
    for (const auto& c : checks) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

nlohmann::json to_json(const Manifest& m, bool timings) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : m.checks) {
        nlohmann::json j{{"id", c.id}, {"reference", c.reference}, {"verdict", c.passed ? "pass" : "fail"}, {"peak_terms", c.peak_terms}};
        if (!c.passed) j["residual"] = c.residual;
        if (timings) j["elapsed"] = c.elapsed;
        checks.push_back(std::move(j));
    }
    nlohmann::json out{{"schema", kManifestSchema}, {"command", m.command}, {"checks", checks}, {"data", m.data},
                       {"status", m.passed() ? "pass" : "fail"}};
    if (m.stopped) out["stopped"] = *m.stopped;
    return out;
}

Manifest manifest_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<int>() != kManifestSchema) throw std::invalid_argument("unsupported manifest schema");
    Manifest m;
    m.command = j.at("command").get<std::string>();
    for (const auto& c : j.at("checks")) {
        CheckRecord r;
        r.id = c.at("id").get<std::string>();
        r.reference = c.at("reference").get<std::string>();
        r.passed = c.at("verdict").get<std::string>() == "pass";
        r.residual = c.value("residual", std::string());
        r.elapsed = c.value("elapsed", 0.0);
        r.peak_terms = c.at("peak_terms").get<std::size_t>();
        m.checks.push_back(std::move(r));
    }
    m.data = j.at("data");
    if (j.contains("stopped")) m.stopped = j.at("stopped").get<std::string>();
    return m;
}

std::string to_table(const Manifest& m, bool timings) {
    std::size_t width = 5;
    for (const auto& c : m.checks) width = std::max(width, c.id.size());
    std::string out;
    char buf[64];
    for (const auto& c : m.checks) {
        std::string line = (c.passed ? "pass  " : "FAIL  ") + c.id + std::string(width - c.id.size() + 2, ' ');
        if (timings) {
            std::snprintf(buf, sizeof buf, "%9.3fs  ", c.elapsed);
            line += buf;
        }
        line += c.reference;
        out += line + "\n";
        if (!c.passed && !c.residual.empty()) {
            std::string r = c.residual.size() > 400 ? c.residual.substr(0, 400) + " ..." : c.residual;
            out += "      residual: " + r + "\n";
        }
    }
    if (m.stopped) out += "stopped: " + *m.stopped + "\n";
    std::size_t passed = static_cast<std::size_t>(std::count_if(m.checks.begin(), m.checks.end(), [](const CheckRecord& c) { return c.passed; }));
    out += std::to_string(passed) + "/" + std::to_string(m.checks.size()) + " checks passed, status " + (m.passed() ? "pass" : "fail") + "\n";
    return out;
}

bool Runner::run(const std::string& id, const std::string& reference, const std::function<poisson::Outcome()>& body) {
    budget_.check(id);
    CheckRecord r{id, reference, false, {}, 0, 0};
    auto start = std::chrono::steady_clock::now();
    try {
        auto o = body();
        r.passed = o.passed;
        r.residual = o.residual;
        r.peak_terms = o.peak_terms;
    } catch (const support::BudgetExceeded&) {
        throw;
    } catch (const std::exception& e) {
        r.residual = e.what();
    }
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    m_.checks.push_back(r);
    return r.passed;
}

bool Runner::expect(const std::string& id, const std::string& reference, const std::function<bool()>& body) {
    return run(id, reference, [&] {
        poisson::Outcome o;
        o.passed = body();
        if (!o.passed) o.residual = "expectation not met";
        return o;
    });
}

} // namespace wdvv::cli
