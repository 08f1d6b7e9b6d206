#include "khk/kkh.hpp"
#include "khk/digest.hpp"
#include "khk/errors.hpp"

namespace khk {

std::string member_id(const LinkDiagram& d) {
    return "kh64:" + hex64(fnv1a64(d.pd_code()));
}

KKhResult kkh(const GraphDiagram& g, const KKhOptions& opts) {
    FamilyOptions fo;
    fo.dedupe = opts.dedupe;
    fo.adjacent_only = opts.adjacent_only;
    fo.cap = opts.cap;
    fo.parallel = opts.parallel;
    std::vector<FamilyMember> fam = family(g, fo);

    for (const FamilyMember& m : fam)
        if (m.link.crossing_count() > opts.cap)
            throw CapError("family member at choice [" + m.choice.str() + "] has " +
                           std::to_string(m.link.crossing_count()) +
                           " crossings, above the cap of " + std::to_string(opts.cap));

    KKhResult out;
    out.members.resize(fam.size());

    std::string error;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (long long i = 0; i < static_cast<long long>(fam.size()); ++i) {
        try {
            KKhMember& m = out.members[i];
            m.choice = fam[i].choice;
            m.link = fam[i].link;
            m.id = member_id(m.link);
            if (fam[i].dims) {
                m.dims = *fam[i].dims;
            } else {
                CubeOptions co;
                co.cap = opts.cap;
                co.parallel = false;
                m.dims = homology_dims(build_complex(m.link, co), false);
            }
            m.euler = euler_characteristic(m.dims);
        } catch (const std::exception& e) {
#pragma omp critical(khk_kkh_error)
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw InternalError("member homology failed: " + error);

    for (const KKhMember& m : out.members) {
        for (auto& [key, dim] : m.dims) out.total[key] += dim;
        out.total_euler += m.euler;
    }
    return out;
}

} // namespace khk
