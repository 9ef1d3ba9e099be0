#include <wdvv/support/cache.hpp>

#include <openssl/evp.h>
#include <sys/file.h>
#include <fcntl.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace wdvv::support {

namespace fs = std::filesystem;

std::string content_hash(const std::string& text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

fs::path default_cache_dir() {
    if (const char* dir = std::getenv("WDVV_CACHE_DIR"); dir && *dir) return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "wdvv";
    if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "wdvv";
    return fs::current_path() / ".wdvv-cache";
}

namespace {

class FileLock {
public:
    FileLock(const fs::path& path, int op) : fd_(::open(path.c_str(), O_RDWR | O_CREAT, 0644)) {
        if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path.string());
        if (::flock(fd_, op) != 0) {
            ::close(fd_);
            throw std::runtime_error("cannot lock " + path.string());
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_;
};

} // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::path_for(const std::string& kind, const std::string& key) const {
    return dir_ / kind / (key + ".json");
}

std::optional<nlohmann::json> Cache::load(const std::string& kind, const std::string& key) const {
    auto path = path_for(kind, key);
    if (!fs::exists(path)) return std::nullopt;
    FileLock lock(dir_ / ".lock", LOCK_SH);
    std::ifstream in(path);
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) return std::nullopt;
    return doc;
}

void Cache::store(const std::string& kind, const std::string& key, const nlohmann::json& doc) const {
    fs::create_directories(dir_ / kind);
    FileLock lock(dir_ / ".lock", LOCK_EX);
    auto path = path_for(kind, key);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << doc.dump(1) << '\n';
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace wdvv::support
