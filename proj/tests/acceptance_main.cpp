#include "liebau/acceptance.hpp"

#include <cstdio>

int main() {
    bool all = true;
    for (const auto& r : liebau::acceptance::run_all()) {
        std::printf("%-4s %2d  %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
