#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/sampler.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace leibniz {

// A local derivation agrees with some derivation at every single point. That
// "for every x" condition is approximated from above by finitely many linear
// membership constraints: CS(V) = { T linear : T(v) in span{D(v) : D in Der}
// for every v in V }. Der <= LocDer <= CS(V) holds for every finite V, so
// CS(V) = Der certifies LocDer = Der exactly.

// ---------------------------------------------------------------------------
// Evaluation subspaces and pointwise membership
// ---------------------------------------------------------------------------

/// Span of { D(x) : D in der }.
inline SubspaceBasis evaluation_subspace(const OperatorSubspace& der, const Vec& x)
{
    if (x.size() != der.operator_dim())
        throw std::invalid_argument("vector dimension mismatch");
    std::vector<Vec> images;
    for (const auto& d : der.basis())
        images.push_back(d.apply(x));
    return SubspaceBasis::from_spanning(der.operator_dim(), images);
}

/// Coefficients c with (sum_i c_i D_i)(x) = t(x), or nullopt when t(x) is not
/// reachable at x. A nullopt here is an exact proof that t is not local.
inline std::optional<Vec> pointwise_membership(const LinearOperator& t, const Vec& x,
                                               const OperatorSubspace& der)
{
    const std::size_t n = der.operator_dim();
    if (t.dim() != n || x.size() != n)
        throw std::invalid_argument("dimension mismatch");
    const auto basis = der.basis();
    Matrix images(n, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const Vec img = basis[c].apply(x);
        for (std::size_t r = 0; r < n; ++r)
            images.at(r, c) = img[r];
    }
    return solve(images, t.apply(x));
}

// ---------------------------------------------------------------------------
// Constraint schedules
// ---------------------------------------------------------------------------

enum class VectorProvenance { Basis, PairwiseSum, PaperTriple, Custom };

struct ScheduleEntry {
    Vec vector;
    VectorProvenance provenance;
};

struct ConstraintSchedule {
    std::vector<ScheduleEntry> entries;

    void add(Vec v, VectorProvenance p)
    {
        if (is_zero_vec(v))
            throw std::invalid_argument("schedule vectors must be nonzero");
        entries.push_back({std::move(v), p});
    }

    std::size_t size() const { return entries.size(); }
};

inline ConstraintSchedule basis_schedule(const LeibnizAlgebra& a)
{
    ConstraintSchedule s;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s.add(a.basis_vector(i), VectorProvenance::Basis);
    return s;
}

/// The test vectors of the model-nilradical local-derivation argument, on top
/// of the basis: e^1_1 + e^t_1 (t >= 2), e^1_1 + e^1_i (2 <= i <= m_1),
/// e^t_i + e^t_1 + e^1_1 (t >= 2, 2 <= i <= m_t), and x_1 + e^1_2.
inline ConstraintSchedule paper_schedule_rmodel(const LeibnizAlgebra& a)
{
    const auto* tag = a.family() ? std::get_if<RModelTag>(&*a.family()) : nullptr;
    if (!tag)
        throw std::invalid_argument("paper schedule requires an RModel-tagged algebra");
    const auto& m = tag->m;
    const std::size_t s_count = m.size();
    std::vector<std::size_t> off(s_count);
    std::size_t acc = 0;
    for (std::size_t t = 0; t < s_count; ++t) {
        off[t] = acc;
        acc += m[t];
    }
    const std::size_t x1 = acc;

    ConstraintSchedule sched = basis_schedule(a);
    const auto e = [&](std::size_t t, std::size_t i) {  // 1-based chain position i
        return a.basis_vector(off[t] + i - 1);
    };
    for (std::size_t t = 1; t < s_count; ++t)
        sched.add(add(e(0, 1), e(t, 1)), VectorProvenance::PairwiseSum);
    for (std::size_t i = 2; i <= m[0]; ++i)
        sched.add(add(e(0, 1), e(0, i)), VectorProvenance::PairwiseSum);
    for (std::size_t t = 1; t < s_count; ++t)
        for (std::size_t i = 2; i <= m[t]; ++i)
            sched.add(add(add(e(t, i), e(t, 1)), e(0, 1)), VectorProvenance::PaperTriple);
    if (m[0] >= 2)
        sched.add(add(a.basis_vector(x1), e(0, 2)), VectorProvenance::PairwiseSum);
    return sched;
}

/// One greedy round: every 2- and 3-element support of basis vectors, with
/// fresh nonzero random coefficients in [-5, 5]. A cutting vector can live on
/// one specific index pair, and some cuts need two independent coefficient
/// ratios on the same support, so rounds resample the coefficients.
inline void append_greedy_round(ConstraintSchedule& sched, const LeibnizAlgebra& a,
                                std::uint64_t seed, std::size_t round)
{
    const std::size_t n = a.dim();
    SmallIntSampler rng(seed, 0x5eedULL + round);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec v = zero_vec(n);
            v[i] = Rational(rng.nonzero_int(5));
            v[j] = Rational(rng.nonzero_int(5));
            sched.add(std::move(v), VectorProvenance::PairwiseSum);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec v = zero_vec(n);
                v[i] = Rational(rng.nonzero_int(5));
                v[j] = Rational(rng.nonzero_int(5));
                v[k] = Rational(rng.nonzero_int(5));
                sched.add(std::move(v), VectorProvenance::PairwiseSum);
            }
}

// ---------------------------------------------------------------------------
// Constraint space and certification
// ---------------------------------------------------------------------------

/// CS(V): each schedule vector v contributes the rows
///   a^T T(v) = 0  for every annihilator direction a of span{D(v)},
/// assembled over the flattened unknown T and solved as one nullspace.
inline OperatorSubspace constraint_space(const OperatorSubspace& der,
                                         const ConstraintSchedule& schedule)
{
    const std::size_t n = der.operator_dim();
    std::vector<Vec> rows;
    for (const auto& entry : schedule.entries) {
        const Vec& v = entry.vector;
        if (v.size() != n)
            throw std::invalid_argument("schedule vector dimension mismatch");
        const SubspaceBasis eval = evaluation_subspace(der, v);
        const SubspaceBasis ann = eval.annihilator();
        for (const Vec& a : ann.vectors()) {
            Vec row = zero_vec(n * n);
            for (std::size_t r = 0; r < n; ++r) {
                if (is_zero(a[r]))
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                    if (!is_zero(v[c]))
                        row[r * n + c] += a[r] * v[c];
            }
            rows.push_back(std::move(row));
        }
    }
    std::vector<LinearOperator> ops;
    for (const Vec& w : nullspace(Matrix::from_rows(rows, n * n)))
        ops.push_back(LinearOperator::from_flat(n, w));
    return OperatorSubspace::from_spanning(n, ops);
}

enum class LocDerStatus { Certified, CandidateGap, Refuted };

inline std::string to_string(LocDerStatus s)
{
    switch (s) {
    case LocDerStatus::Certified: return "Certified";
    case LocDerStatus::CandidateGap: return "CandidateGap";
    case LocDerStatus::Refuted: return "Refuted";
    }
    return "?";
}

struct LocDerVerdict {
    LocDerStatus status = LocDerStatus::CandidateGap;
    std::size_t cs_dim = 0;
    std::size_t der_dim = 0;
    std::vector<LinearOperator> gap_basis;  // extends Der to CS when CandidateGap
    std::optional<Vec> witness;             // refuting vector, when one is known
    ConstraintSchedule schedule;
    std::size_t rounds = 0;
    std::string note;
};

enum class CertifyStrategy { Paper, Greedy };

namespace detail {

inline std::vector<LinearOperator> complement_basis(const OperatorSubspace& inner,
                                                    const OperatorSubspace& outer)
{
    const std::size_t n = outer.operator_dim();
    std::vector<Vec> rows = inner.flat().vectors();
    std::vector<LinearOperator> gap;
    std::size_t current = rref(Matrix::from_rows(rows, n * n)).rank;
    for (const Vec& v : outer.flat().vectors()) {
        rows.push_back(v);
        const std::size_t r = rref(Matrix::from_rows(rows, n * n)).rank;
        if (r > current) {
            gap.push_back(LinearOperator::from_flat(n, v));
            current = r;
        } else {
            rows.pop_back();
        }
    }
    return gap;
}

} // namespace detail

/// Certifies LocDer(A) = Der(A) by shrinking CS(V) onto Der. The paper
/// strategy evaluates the fixed schedule once (basis vectors, plus the proof
/// vectors when the algebra carries an RModel tag). The greedy strategy keeps
/// appending random small combinations until CS = Der or the dimension
/// stabilizes. Certified means exact equality; CandidateGap is not a proof of
/// a gap, it reports the overapproximation that is left.
inline LocDerVerdict certify_locder_equals_der(const LeibnizAlgebra& a,
                                               const OperatorSubspace& der,
                                               CertifyStrategy strategy,
                                               std::size_t max_rounds = 5,
                                               std::uint64_t seed = 0)
{
    LocDerVerdict verdict;
    verdict.der_dim = der.dim();
    verdict.schedule = basis_schedule(a);
    if (strategy == CertifyStrategy::Paper && a.family() &&
        std::holds_alternative<RModelTag>(*a.family()))
        verdict.schedule = paper_schedule_rmodel(a);

    OperatorSubspace cs = constraint_space(der, verdict.schedule);
    if (strategy == CertifyStrategy::Greedy) {
        std::size_t round = 0;
        std::size_t stalled = 0;
        while (cs.dim() > der.dim() && round < max_rounds) {
            ++round;
            const std::size_t previous = cs.dim();
            append_greedy_round(verdict.schedule, a, seed, round);
            cs = constraint_space(der, verdict.schedule);
            stalled = cs.dim() == previous ? stalled + 1 : 0;
            if (stalled >= 2) {
                verdict.note = "constraint space stabilized at dim " +
                               std::to_string(cs.dim()) + " after round " + std::to_string(round);
                break;
            }
        }
        verdict.rounds = round;
        if (verdict.note.empty() && cs.dim() > der.dim())
            verdict.note = "round budget exhausted at dim " + std::to_string(cs.dim());
    }

    verdict.cs_dim = cs.dim();
    if (cs.dim() == der.dim() && subspace_contains(cs.flat(), der.flat())) {
        verdict.status = LocDerStatus::Certified;
    } else {
        verdict.status = LocDerStatus::CandidateGap;
        verdict.gap_basis = detail::complement_basis(der, cs);
        if (verdict.note.empty() && strategy == CertifyStrategy::Greedy)
            verdict.note = "round budget exhausted";
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// The explicit local non-derivation on R1 / R2
// ---------------------------------------------------------------------------

/// The operator sending f_1 -> 2 f_{n-1}, f_2 -> f_n and every other basis
/// vector to 0, on R1(n) or R2(n) with n >= 3. It is never a derivation, yet
/// a derivation witnesses it at every point.
inline LinearOperator build_counterexample_local(const LeibnizAlgebra& a)
{
    std::size_t n = 0;
    if (a.family()) {
        if (const auto* r1 = std::get_if<R1Tag>(&*a.family()))
            n = r1->n;
        else if (const auto* r2 = std::get_if<R2Tag>(&*a.family()))
            n = r2->n;
    }
    if (n == 0)
        throw std::invalid_argument("counterexample requires an R1- or R2-tagged algebra");
    if (n < 3)
        throw std::invalid_argument("counterexample requires n >= 3");
    LinearOperator t(a.dim());
    t.matrix().at(n - 2, 0) = 2;  // f_1 -> 2 f_{n-1}
    t.matrix().at(n - 1, 1) = 1;  // f_2 -> f_n
    return t;
}

// ---------------------------------------------------------------------------
// Sampled locality evidence
// ---------------------------------------------------------------------------

struct SampledLocalResult {
    bool all_witnessed = true;
    std::optional<Vec> refuted_at;  // exact refutation when present
    std::size_t trials = 0;
};

/// Runs pointwise membership on seeded random vectors. A failure is an exact
/// proof that t is not local; success on all trials is evidence only, never a
/// certification.
inline SampledLocalResult sampled_local_check(const LinearOperator& t, const OperatorSubspace& der,
                                              std::size_t trials, std::uint64_t seed,
                                              std::size_t jobs = 1)
{
    SampledLocalResult result;
    result.trials = trials;
    const std::size_t n = der.operator_dim();
    std::vector<char> failed(trials, 0);
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SmallIntSampler rng(seed, i);
            const Vec x = rng.vector(n);
            if (!pointwise_membership(t, x, der))
                failed[i] = 1;
        }
    };
    if (jobs <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (trials + jobs - 1) / jobs;
        for (std::size_t w = 0; w < jobs; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(trials, begin + chunk);
            if (begin < end)
                workers.emplace_back(run_range, begin, end);
        }
        for (auto& th : workers)
            th.join();
    }
    for (std::size_t i = 0; i < trials; ++i)
        if (failed[i]) {
            SmallIntSampler rng(seed, i);
            result.all_witnessed = false;
            result.refuted_at = rng.vector(n);
            break;
        }
    return result;
}

} // namespace leibniz
