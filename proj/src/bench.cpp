#include "astmesh/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <charconv>
#include <cmath>
#include <ostream>
#include <thread>

#include "astmesh/refinement.hpp"

namespace astmesh {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

std::pair<double, double> dp_dq(int p, int q) {
    if (p < 2 || q < 2) throw ParameterError("complexity constants require p,q >= 2");
    const double dp = 0.5 + (1.0 + kSqrt2) * (p + kSqrt2);
    const double dq = 1.0 / kSqrt2 + (2.0 + kSqrt2) * (q + kSqrt2);
    return { dp, dq };
}

double complexity_constant(int p, int q) {
    const auto [dp, dq] = dp_dq(p, q);
    return (3.0 + kSqrt2) * (4.0 * dp + 1.0) * (4.0 * dq + kSqrt2);
}

double RunStats::max_cumulative_ratio() const {
    double best = 0.0;
    std::size_t marked_so_far = 0;
    for (const StepStats& s : per_step) {
        marked_so_far += s.marked;
        if (marked_so_far > 0)
            best = std::max(best, double(s.refined_total) / double(marked_so_far));
    }
    return best;
}

namespace {

// Deterministic (level, i, j)-ordered element list maintained across steps.
class SortedElements {
public:
    explicit SortedElements(const Mesh& mesh) : elems_(mesh.elements_sorted()) {}

    const ElementId& at(std::size_t idx) const { return elems_[idx]; }
    std::size_t size() const { return elems_.size(); }

    void erase(const ElementId& e) {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
        elems_.erase(it);
    }

    void insert(const ElementId& e) {
        elems_.insert(std::upper_bound(elems_.begin(), elems_.end(), e), e);
    }

private:
    std::vector<ElementId> elems_;
};

ElementId corner_element(const Mesh& mesh) {
    for (const auto& [level, set] : mesh.by_level())
        if (set.count(Mesh::IJ{0, 0})) return ElementId{level, 0, 0};
    throw Error("mesh has no lower-left corner element");  // unreachable on partitions
}

} // namespace

RunStats run_sequence(int p, int q, int M, int N, const Policy& policy, int steps,
                      const StepObserver& observer) {
    if (steps < 1) throw ParameterError("run_sequence requires at least one step");
    if (policy.kind == Policy::Kind::explicit_marks &&
        static_cast<int>(policy.marks_per_step.size()) != steps)
        throw ParameterError("explicit policy must provide marks for every step");

    Mesh mesh = initial_mesh(p, q, M, N);
    SortedElements sorted(mesh);
    SplitMix64 rng(policy.seed);

    RunStats stats;
    stats.steps = steps;
    stats.initial_elements = mesh.size();
    stats.per_step.reserve(steps);

    std::vector<ElementId> closure_elems;
    for (int step = 0; step < steps; ++step) {
        std::vector<ElementId> marks;
        switch (policy.kind) {
            case Policy::Kind::random_uniform:
                marks.push_back(sorted.at(rng.below(sorted.size())));
                break;
            case Policy::Kind::lower_left_corner:
                marks.push_back(corner_element(mesh));
                break;
            case Policy::Kind::explicit_marks:
                marks = policy.marks_per_step[step];
                break;
        }

        detail::refine_in_place(mesh, marks, closure_elems);
        for (const ElementId& e : closure_elems) {
            sorted.erase(e);
            const auto [a, b] = children(e);
            sorted.insert(a);
            sorted.insert(b);
        }

        StepStats s;
        s.marked = marks.size();
        s.closure_size = closure_elems.size();
        s.generated = closure_elems.size();
        s.elements = mesh.size();
        s.level_max = mesh.max_level();
        s.refined_total = mesh.refined_count();
        stats.per_step.push_back(s);
        stats.sum_marked += s.marked;

        if (observer) observer(step, marks, closure_elems);
    }

    stats.final_elements = mesh.size();
    stats.final_refined = mesh.refined_count();
    assert(check_complexity_bound(stats, p, q));
    return stats;
}

bool check_complexity_bound(const RunStats& stats, int p, int q) {
    return double(stats.final_refined) <=
           complexity_constant(p, q) * double(stats.sum_marked);
}

bool check_witness_elements(const std::vector<ElementId>& generated,
                            const std::vector<ElementId>& marks, int p, int q) {
    const auto [dp, dq] = dp_dq(p, q);
    for (const ElementId& e : generated) {
        // Dyadic over-approximation of 2^{-l/2} (d_p, d_q); exact for even l.
        const double scale = std::exp2(-0.5 * e.level);
        const Dyadic bx = Dyadic::from_double_round_up(dp * scale);
        const Dyadic by = Dyadic::from_double_round_up(dq * scale);
        const bool found = std::any_of(marks.begin(), marks.end(), [&](const ElementId& m) {
            if (e.level > m.level + 1) return false;
            const Point d = dist(e, m);
            return d.x <= bx && d.y <= by;
        });
        if (!found) return false;
    }
    return true;
}

bool check_witness(const Mesh& before, const std::vector<ElementId>& marks,
                   const Mesh& after, int p, int q) {
    std::vector<ElementId> generated;
    after.for_each([&](const ElementId& e) {
        if (!before.contains(e)) generated.push_back(e);
    });
    return check_witness_elements(generated, marks, p, q);
}

RandomExperiment experiment_random(int p, int q, int M, int N, int J, int runs,
                                   std::uint64_t seed) {
    if (runs < 1) throw ParameterError("experiment requires at least one run");
    RandomExperiment ex;
    ex.runs = runs;
    ex.per_run.resize(runs);

    // Each run gets an independent sub-seed; runs are embarrassingly parallel.
    std::vector<std::uint64_t> run_seeds(runs);
    SplitMix64 seeder(seed);
    for (auto& s : run_seeds) s = seeder.next();

    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(runs)));
    std::vector<std::thread> pool;
    std::atomic<int> cursor{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (int r; (r = cursor.fetch_add(1)) < runs;)
                ex.per_run[r] = run_sequence(p, q, M, N, Policy::random(run_seeds[r]), J);
        });
    }
    for (auto& t : pool) t.join();

    std::vector<double> ratios;
    ratios.reserve(runs);
    for (const RunStats& r : ex.per_run) ratios.push_back(r.final_ratio());
    ex.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    ex.median_ratio = ratios.size() % 2 == 1
                          ? ratios[mid]
                          : 0.5 * (ratios[mid - 1] + ratios[mid]);
    return ex;
}

CornerExperiment experiment_corner(int p, int q, int M, int N, int J) {
    CornerExperiment ex;
    ex.stats = run_sequence(p, q, M, N, Policy::corner(), J);
    ex.max_ratio = ex.stats.max_cumulative_ratio();
    return ex;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

void write_csv(std::ostream& os, const std::vector<RunStats>& runs) {
    os << "run,step,level_max,elements,marked,generated,ratio\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
        std::size_t marked_so_far = 0;
        for (std::size_t j = 0; j < runs[r].per_step.size(); ++j) {
            const StepStats& s = runs[r].per_step[j];
            marked_so_far += s.marked;
            const double ratio = marked_so_far == 0
                                     ? 0.0
                                     : double(s.elements - runs[r].initial_elements) /
                                           double(marked_so_far);
            os << r << ',' << (j + 1) << ',' << s.level_max << ',' << s.elements << ','
               << s.marked << ',' << s.generated << ',' << format_double(ratio) << '\n';
        }
    }
}

} // namespace astmesh
