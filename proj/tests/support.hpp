#pragma once

// Shared helpers for the test suites: braid closures as a source of honest
// planar diagrams, a seeded random-diagram generator, and corpus loading.

#include "khk/diagram.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace khk::testsup {

// Closure of a braid word on `strands` strands. Letter +g crosses the
// strands at positions g-1,g with the right strand on top; -g is its
// inverse. Untouched strands close into crossingless loops.
inline LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
    std::vector<ArcLabel> cur(strands);
    for (int p = 0; p < strands; ++p) cur[p] = p + 1;
    ArcLabel next = strands;
    std::vector<Crossing> cs;
    for (int letter : word) {
        int g = letter > 0 ? letter : -letter;
        ArcLabel il = cur[g - 1], ir = cur[g];
        ArcLabel ol = ++next, orr = ++next;
        if (letter > 0) cs.push_back({{il, ol, orr, ir}});
        else cs.push_back({{ir, il, ol, orr}});
        cur[g - 1] = ol;
        cur[g] = orr;
    }
    int unknots = 0;
    for (int p = 0; p < strands; ++p) {
        if (cur[p] == static_cast<ArcLabel>(p + 1)) {
            ++unknots;
            continue;
        }
        for (Crossing& c : cs)
            for (ArcLabel& a : c.arc)
                if (a == cur[p]) a = p + 1;
    }
    ArcLabel loop_base = next;
    std::vector<ArcLabel> loops;
    for (int i = 0; i < unknots; ++i) loops.push_back(++loop_base);
    return LinkDiagram::from_pd(std::move(cs), std::move(loops));
}

inline LinkDiagram random_diagram(std::mt19937& rng, int max_crossings) {
    std::uniform_int_distribution<int> strands_d(2, 4);
    int strands = strands_d(rng);
    std::uniform_int_distribution<int> len_d(1, max_crossings);
    int len = len_d(rng);
    std::uniform_int_distribution<int> gen_d(1, strands - 1);
    std::uniform_int_distribution<int> sign_d(0, 1);
    std::vector<int> word;
    for (int i = 0; i < len; ++i) word.push_back(gen_d(rng) * (sign_d(rng) ? 1 : -1));
    return braid_closure(strands, word);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// tests run from the build tree; data lives next to the sources
inline std::string data_path(const std::string& name) {
    static const std::string base = [] {
        for (const char* candidate : {"tests/data", "../tests/data", "../../tests/data", "data"}) {
            if (std::filesystem::exists(std::filesystem::path(candidate)))
                return std::string(candidate);
        }
        return std::string(KHK_TEST_DATA_DIR);
    }();
    return base + "/" + name;
}

inline std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (auto& entry : std::filesystem::directory_iterator(data_path(""))) {
        if (entry.path().extension() == ".pd") out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace khk::testsup
