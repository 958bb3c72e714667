#ifndef ASTMESH_BENCH_HPP
#define ASTMESH_BENCH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "astmesh/mesh.hpp"

namespace astmesh {

/// Deterministic 64-bit generator (splitmix64); identical sequences on every
/// platform for a given seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

/// Constants (d_p, d_q) of the witness-distance bound.
std::pair<double, double> dp_dq(int p, int q);

/// The linear-complexity constant C_{p,q} = (3+sqrt2)(4 d_p + 1)(4 d_q + sqrt2).
double complexity_constant(int p, int q);

/// How a refinement sequence picks its marks each step.
struct Policy {
    enum class Kind { random_uniform, lower_left_corner, explicit_marks };

    Kind kind = Kind::random_uniform;
    std::uint64_t seed = 0;  // random_uniform only
    std::vector<std::vector<ElementId>> marks_per_step;  // explicit_marks only

    static Policy random(std::uint64_t seed) { return { Kind::random_uniform, seed, {} }; }
    static Policy corner() { return { Kind::lower_left_corner, 0, {} }; }
    static Policy explicit_list(std::vector<std::vector<ElementId>> marks) {
        return { Kind::explicit_marks, 0, std::move(marks) };
    }
};

/// Per-step record of a refinement sequence.
struct StepStats {
    std::size_t marked = 0;       // |M_j|
    std::size_t closure_size = 0; // elements bisected this step
    std::size_t generated = 0;    // net growth, equals closure_size
    std::size_t elements = 0;     // |G_j| after the step
    int level_max = 0;            // max level after the step
    std::size_t refined_total = 0; // |G_j \ G_0| after the step
};

/// Statistics of one refinement sequence.
struct RunStats {
    int steps = 0;
    std::vector<StepStats> per_step;
    std::size_t initial_elements = 0;
    std::size_t sum_marked = 0;
    std::size_t final_elements = 0;
    std::size_t final_refined = 0;  // |G_J \ G_0|

    /// Net growth (|G_J| - |G_0|, the sum of closure sizes) per marked element.
    double generated_per_marked() const {
        return sum_marked == 0
                   ? 0.0
                   : double(final_elements - initial_elements) / double(sum_marked);
    }

    /// |G_J \ G_0| (as a set difference) per marked element; the quantity
    /// bounded by the complexity constant.
    double refined_per_marked() const {
        return sum_marked == 0 ? 0.0 : double(final_refined) / double(sum_marked);
    }

    /// |G_J| / J, the figure-of-merit of single-mark runs.
    double final_ratio() const {
        return steps == 0 ? 0.0 : double(final_elements) / double(steps);
    }

    /// Largest |G_j \ G_0| / j over all steps.
    double max_cumulative_ratio() const;
};

/// Called after each step with the marks and the bisected closure.
using StepObserver =
    std::function<void(int step, const std::vector<ElementId>& marks,
                       const std::vector<ElementId>& closure_elements)>;

/// Runs `steps` refinements from the initial mesh under the policy and
/// records per-step statistics; deterministic for a fixed policy.
/// The observer, if any, also receives every step.
RunStats run_sequence(int p, int q, int M, int N, const Policy& policy, int steps,
                      const StepObserver& observer = nullptr);

/// The linear-complexity inequality |G_J \ G_0| <= C_{p,q} * sum |M_j|.
bool check_complexity_bound(const RunStats& stats, int p, int q);

/// Witness property of one refinement step: every element of `after` that is
/// not in `before` has a mark within level offset 1 and within the scaled
/// (d_p, d_q) distance bound. The bound is compared against a dyadic
/// round-up at 2^-30 granularity, so a pass is conservative up to that
/// granularity.
bool check_witness(const Mesh& before, const std::vector<ElementId>& marks,
                   const Mesh& after, int p, int q);

/// Core of check_witness when the generated elements are already known.
bool check_witness_elements(const std::vector<ElementId>& generated,
                            const std::vector<ElementId>& marks, int p, int q);

/// Aggregate of repeated random single-mark sequences.
struct RandomExperiment {
    int runs = 0;
    std::vector<RunStats> per_run;
    double max_ratio = 0.0;     // max over runs of |G_J|/J
    double median_ratio = 0.0;  // median over runs of |G_J|/J
};

/// `runs` independent J-step random single-mark sequences with per-run seeds
/// derived from `seed`. Runs execute in parallel; results are deterministic.
RandomExperiment experiment_random(int p, int q, int M, int N, int J, int runs,
                                   std::uint64_t seed);

/// Summary of the deterministic corner-marking sequence.
struct CornerExperiment {
    RunStats stats;
    double max_ratio = 0.0;  // max over j of |G_j \ G_0| / j
};

/// J steps always marking the element at the lower-left corner.
CornerExperiment experiment_corner(int p, int q, int M, int N, int J);

/// CSV rows `run,step,level_max,elements,marked,generated,ratio`, one per
/// step per run; `ratio` is the cumulative net growth over marks so far.
void write_csv(std::ostream& os, const std::vector<RunStats>& runs);

} // namespace astmesh

#endif
