#pragma once

#include <wdvv/poisson/poisson.hpp>
#include <wdvv/support/budget.hpp>

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wdvv::cli {

inline constexpr int kManifestSchema = 1;

struct CheckRecord {
    std::string id;
    std::string reference;
    bool passed = false;
    std::string residual;
    double elapsed = 0;
    std::size_t peak_terms = 0;
};

struct Manifest {
    std::string command;
    std::vector<CheckRecord> checks;
    /// Results that are reported rather than checked.
    nlohmann::json data = nlohmann::json::object();
    /// Set when a budget stopped the command; the checks run so far are kept.
    std::optional<std::string> stopped;

    bool passed() const;
    const CheckRecord* find(const std::string& id) const;
};

/// Elapsed times are omitted unless `timings` is set, so that repeated runs
/// produce identical documents.
nlohmann::json to_json(const Manifest& m, bool timings = false);
Manifest manifest_from_json(const nlohmann::json& j);
std::string to_table(const Manifest& m, bool timings = false);

/// Appends checks to a manifest, timing each one and checking the budget
/// before it starts. Exceptions other than support::BudgetExceeded become
/// failed checks.
class Runner {
public:
    Runner(Manifest& m, const support::Budget& budget) : m_(m), budget_(budget) {}

    bool run(const std::string& id, const std::string& reference, const std::function<poisson::Outcome()>& body);
    bool expect(const std::string& id, const std::string& reference, const std::function<bool()>& body);

    const support::Budget& budget() const { return budget_; }

private:
    Manifest& m_;
    const support::Budget& budget_;
};

} // namespace wdvv::cli
