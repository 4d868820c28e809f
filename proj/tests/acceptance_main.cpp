// Runs the full verification battery and prints one line per criterion.
// Exit 0 iff every criterion passes.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "weightlab/suite.hpp"

int main(int argc, char** argv) {
    uint64_t seed = 7;
    std::string size = "small";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--size") == 0 && i + 1 < argc) {
            size = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--seed N] [--size tiny|small]\n", argv[0]);
            return 2;
        }
    }

    auto result = weightlab::suite::run_suite(seed, size);
    for (const auto& c : result.criteria) {
        std::printf("criterion %2d %-24s %s  %s\n", c.id, c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.detail.c_str());
    }
    std::printf("%s\n", result.all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return result.all_pass ? 0 : 1;
}
