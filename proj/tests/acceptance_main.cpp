#include <cstdio>
#include <iostream>

#include "spinctrl/acceptance.hpp"
#include "spinctrl/fixtures.hpp"

int main() {
    try {
        const auto summary = spinctrl::run_acceptance();
        std::cout << spinctrl::format_summary(summary);
        std::fprintf(stderr, "elapsed %.1f s\n", summary.seconds);
        return summary.all_passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
