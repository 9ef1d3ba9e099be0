#include <wdvv/support/budget.hpp>

#include <sys/resource.h>
#include <unistd.h>

#include <fstream>

namespace wdvv::support {

Budget::Budget(std::optional<double> seconds, std::optional<double> gigabytes)
    : start_(std::chrono::steady_clock::now()), seconds_(seconds), gigabytes_(gigabytes) {}

double Budget::elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Budget::check(const std::string& where) const {
    if (seconds_ && elapsed() > *seconds_) {
        throw BudgetExceeded("time budget of " + std::to_string(*seconds_) + " s exceeded at " + where);
    }
    if (gigabytes_ && static_cast<double>(resident_bytes()) > *gigabytes_ * 1e9) {
        throw BudgetExceeded("memory budget of " + std::to_string(*gigabytes_) + " GB exceeded at " + where);
    }
}

std::size_t resident_bytes() {
    std::ifstream statm("/proc/self/statm");
    std::size_t size = 0, resident = 0;
    if (!(statm >> size >> resident)) return 0;
    return resident * static_cast<std::size_t>(sysconf(_SC_PAGESIZE));
}

std::size_t peak_resident_bytes() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<std::size_t>(usage.ru_maxrss) * 1024;
}

} // namespace wdvv::support
