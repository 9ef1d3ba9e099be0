#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace wdvv::support {

/// Hex SHA-256 of `text`.
std::string content_hash(const std::string& text);

/// Directory of cached artifacts: $WDVV_CACHE_DIR, else
/// $XDG_CACHE_HOME/wdvv, else ~/.cache/wdvv.
std::filesystem::path default_cache_dir();

/// JSON documents stored under content-hash keys. Writers hold an exclusive
/// lock on `<dir>/.lock`; readers take a shared one.
class Cache {
public:
    explicit Cache(std::filesystem::path dir);
    static Cache from_environment() { return Cache(default_cache_dir()); }

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const std::string& kind, const std::string& key) const;

    std::optional<nlohmann::json> load(const std::string& kind, const std::string& key) const;
    void store(const std::string& kind, const std::string& key, const nlohmann::json& doc) const;

private:
    std::filesystem::path dir_;
};

} // namespace wdvv::support
