#include "permcert/detrep.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "permcert/errors.hpp"
#include "permcert/linalg.hpp"

namespace permcert {

DetRep grenet_build(const GradedLabeledPoset& input) {
    PosetReport rep = validate_poset(input);
    if (!rep.valid) {
        std::string what = "grenet_build: invalid poset:";
        for (const auto& s : rep.problems) what += " " + s + ";";
        throw PosetError(what);
    }

    GradedLabeledPoset p = input;
    int degree = p.rank_d;
    if (!rep.unique_max) {
        // Adjoin a formal top so the top/bottom identification below sees a
        // unique maximum; the unit labels leave the chain polynomial alone.
        p.elements.push_back({"top", p.rank_d + 1});
        for (const auto& mid : rep.max_ids)
            p.covers.push_back({mid, "top", AffineForm(Rat(1))});
        p.rank_d += 1;
        degree += 1;
        rep = validate_poset(p);
        if (!rep.valid) throw PosetError("grenet_build: top adjunction failed");
    }
    const std::string top_id = rep.max_ids.front();
    const std::string bottom_id = rep.min_id;
    if (top_id == bottom_id)
        throw PosetError("grenet_build: poset must have rank >= 1");

    // Vertex 0 is the identified top/bottom; the rest sorted by (rank, id).
    std::vector<const PosetElement*> inner;
    for (const auto& e : p.elements)
        if (e.id != top_id && e.id != bottom_id) inner.push_back(&e);
    std::sort(inner.begin(), inner.end(),
              [](const PosetElement* a, const PosetElement* b) {
                  if (a->rank != b->rank) return a->rank < b->rank;
                  return a->id < b->id;
              });

    std::map<std::string, int> vertex;
    vertex[bottom_id] = 0;
    vertex[top_id] = 0;
    for (size_t i = 0; i < inner.size(); ++i)
        vertex[inner[i]->id] = static_cast<int>(i) + 1;

    const int size = static_cast<int>(inner.size()) + 1;
    DetRep d;
    d.matrix = AffineMatrix(size);
    d.family = "poset";
    d.chain_degree = degree;
    for (int v = 1; v < size; ++v) d.matrix.at(v, v) = AffineForm(Rat(1));
    for (const auto& c : p.covers) {
        AffineForm& cell = d.matrix.at(vertex.at(c.lower), vertex.at(c.upper));
        cell.add_constant(c.label.constant());
        for (const auto& [var, coeff] : c.label.terms()) cell.add_term(var, coeff);
    }

    // One cycle cover per saturated chain: a v0-cycle of length `degree` plus
    // loops, so det = (-1)^(degree-1) * chain polynomial. Even degree needs a
    // single row negated to make the sign +.
    if (degree % 2 == 0) {
        d.sign_fixed = true;
        for (int j = 0; j < size; ++j) d.matrix.at(0, j).negate();
    }
    return d;
}

RatMatrix point_from_assignment(const FamilySpec& spec, const Assignment& a) {
    RatMatrix x(spec.rows(), spec.cols());
    for (const VarId& v : var_order(spec)) {
        auto it = a.find(v);
        if (it == a.end()) throw MissingAssignment(var_name(v));
        const int col = v.col > 0 ? v.col - 1 : spec.n - v.col - 1;
        x.at(v.row - 1, col) = it->second;
    }
    return x;
}

ReferenceEval family_reference(const FamilySpec& spec) {
    return [spec](const Assignment& a) {
        return eval_recurrence(spec, point_from_assignment(spec, a));
    };
}

DetRep build_family_detrep(const FamilySpec& spec) {
    DetRep d = spec.is_hoperm() ? grenet_build(cube_face_lattice(spec.n))
                                : grenet_build(multiset_lattice(spec.comp));
    d.family = spec.display_name();
    return d;
}

namespace {

Assignment draw_assignment(const std::vector<VarId>& vars, int bound,
                           std::uint64_t seed, int trial) {
    std::seed_seq ss{static_cast<unsigned>(seed & 0xffffffffu),
                     static_cast<unsigned>(seed >> 32),
                     static_cast<unsigned>(trial)};
    std::mt19937_64 eng(ss);
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
    Assignment a;
    for (const VarId& v : vars)
        a[v] = Rat(static_cast<long>(eng() % span) - bound);
    return a;
}

}  // namespace

VerifyReport verify_detrep(const DetRep& d, const ReferenceEval& reference,
                           int trials, std::uint64_t seed, Exec exec) {
    if (trials < 1) throw ShapeError("verify_detrep: need trials >= 1");
    VerifyReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.bound = 10 * d.chain_degree;
    rep.trial_ok.assign(trials, false);

    const std::vector<VarId> vars = collect_vars(d.matrix);
    std::vector<char> ok(trials, 0);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int t = 0; t < trials; ++t) {
        const Assignment a = draw_assignment(vars, rep.bound, seed, t);
        ok[t] = det(eval_affine_matrix(d.matrix, a)) == reference(a);
    }

    rep.pass = true;
    for (int t = 0; t < trials; ++t) {
        rep.trial_ok[t] = ok[t] != 0;
        if (!ok[t] && rep.pass) {
            rep.pass = false;
            rep.witness_trial = t;
            rep.witness = draw_assignment(vars, rep.bound, seed, t);
            rep.det_value = det(eval_affine_matrix(d.matrix, rep.witness));
            rep.ref_value = reference(rep.witness);
        }
    }
    return rep;
}

}  // namespace permcert
