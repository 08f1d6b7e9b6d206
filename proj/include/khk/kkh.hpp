#pragma once

#include "khk/kauffman.hpp"
#include "khk/oracle.hpp"

#include <string>
#include <vector>

namespace khk {

struct KKhMember {
    std::string id; // content hash of the canonical PD code
    ReplacementChoice choice;
    LinkDiagram link;
    GradedDims dims;
    LaurentPolynomial euler;
};

// KKh(G): the entrywise direct sum of the Khovanov homologies of the family.
struct KKhResult {
    std::vector<KKhMember> members;
    GradedDims total;            // total(i,j) = sum of member dims(i,j)
    LaurentPolynomial total_euler;
};

struct KKhOptions {
    bool dedupe = true;
    bool adjacent_only = false;
    int cap = default_crossing_cap();
    bool parallel = true;
};

KKhResult kkh(const GraphDiagram& g, const KKhOptions& opts = {});

// "kh64:" + hex FNV-1a of the canonical PD code.
std::string member_id(const LinkDiagram& d);

} // namespace khk
