#include "tuning/simulator.hpp"

#include "tuning/error.hpp"
#include "tuning/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tuning {

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::FreeMove: return "free_move";
    case EventKind::Absorption: return "absorption";
    case EventKind::Transfer: return "transfer";
    }
    return "free_move";
}

void CycleMoments::add(double income, int boundary) {
    ++cycles;
    total += income;
    const double delta = income - mean;
    mean += delta / static_cast<double>(cycles);
    m2 += delta * (income - mean);
    ++boundary_counts[static_cast<size_t>(boundary)];
}

void CycleMoments::merge(const CycleMoments& other) {
    if (other.cycles == 0) return;
    if (cycles == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(cycles);
    const double nb = static_cast<double>(other.cycles);
    const double n = na + nb;
    const double delta = other.mean - mean;
    mean += delta * nb / n;
    m2 += other.m2 + delta * delta * na * nb / n;
    cycles += other.cycles;
    total += other.total;
    boundary_counts[0] += other.boundary_counts[0];
    boundary_counts[1] += other.boundary_counts[1];
}

SimulationStats CycleMoments::stats() const {
    SimulationStats s;
    s.cycles = cycles;
    s.total_income = total;
    s.boundary_counts = boundary_counts;
    if (cycles > 0) {
        s.i_hat = total / static_cast<double>(cycles);
    }
    if (cycles > 1) {
        const double n = static_cast<double>(cycles);
        s.std_error = std::sqrt(std::max(0.0, m2) / (n - 1.0) / n);
    }
    return s;
}

namespace {

template <typename Row>
Eigen::Index inverse_cdf(const Row& cdf, Eigen::Index size, double u) {
    const double* first = cdf;
    const double* hit = std::upper_bound(first, first + size, u);
    if (hit != first + size) return hit - first;
    // u fell in the rounding gap above the last cumulative value: take the last
    // outcome that has mass.
    Eigen::Index k = size - 1;
    while (k > 0 && first[k] == first[k - 1]) --k;
    return k;
}

} // namespace

TransitionSampler::TransitionSampler(const ChainSpec& spec, const Strategy& strategy) {
    const auto n = spec.n_internal;
    row_cdf_.resize(n, n + 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n + 2; ++j) {
            acc += j < 2 ? spec.p01(i, j) : spec.p00(i, j - 2);
            row_cdf_(i, j) = acc;
        }
    }
    for (int s = 0; s < 2; ++s) {
        const auto& alpha = strategy.from_boundary(s);
        Eigen::VectorXd cdf(n);
        double acc = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
            acc += alpha(l);
            cdf(l) = acc;
        }
        transfer_cdf_[static_cast<size_t>(s)] = std::move(cdf);
    }
}

Label TransitionSampler::step(Eigen::Index from, Rng& rng) const {
    const auto k = inverse_cdf(row_cdf_.row(from).data(), row_cdf_.cols(), uniform01(rng));
    return Label{static_cast<int>(k)};
}

Label TransitionSampler::transfer(int s, Rng& rng) const {
    const auto& cdf = transfer_cdf_[static_cast<size_t>(s)];
    return label_of(inverse_cdf(cdf.data(), cdf.size(), uniform01(rng)));
}

namespace {

bool is_boundary(Label l) { return l.value < kFirstInternalLabel; }

// Generates the controlled process one step at a time, starting in label 2.
class Walker {
public:
    Walker(const ChainSpec& spec, const Strategy& strategy, std::uint64_t seed,
           const SimulationOptions& options)
        : spec_(spec), sampler_(spec, strategy), rng_(seed), limit_(options.max_segment_steps) {}

    TrajectoryEvent next() {
        TrajectoryEvent ev;
        ev.step = step_;
        if (step_ == 0) {
            state_ = label_of(0);
            ev.kind = EventKind::FreeMove;
            ev.income_delta = spec_.c(0);
        } else if (is_boundary(state_)) {
            const int s = state_.value;
            state_ = sampler_.transfer(s, rng_);
            const auto l = index_of(state_);
            ev.kind = EventKind::Transfer;
            ev.income_delta = (s == 0 ? spec_.d0(l) : spec_.d1(l)) + spec_.c(l);
            segment_steps_ = 0;
        } else {
            if (++segment_steps_ > limit_) {
                std::ostringstream msg;
                msg << "free evolution exceeded " << limit_ << " steps without absorption";
                throw TuningError(ErrorCode::CycleLimit, msg.str());
            }
            state_ = sampler_.step(index_of(state_), rng_);
            if (is_boundary(state_)) {
                ev.kind = EventKind::Absorption;
                ev.income_delta = 0.0;
            } else {
                ev.kind = EventKind::FreeMove;
                ev.income_delta = spec_.c(index_of(state_));
            }
        }
        ev.state = state_;
        ++step_;
        return ev;
    }

private:
    const ChainSpec& spec_;
    TransitionSampler sampler_;
    Rng rng_;
    std::uint64_t limit_;
    Label state_{};
    std::int64_t step_ = 0;
    std::uint64_t segment_steps_ = 0;
};

void check_inputs(const ChainSpec& spec, const Strategy& strategy) {
    require_valid(spec);
    require_valid(strategy, spec.n_internal);
}

} // namespace

CycleMoments simulate_replication(const ChainSpec& spec, const Strategy& strategy,
                                  std::int64_t cycles, std::uint64_t seed,
                                  const SimulationOptions& options) {
    Walker walker(spec, strategy, seed, options);
    CycleMoments moments;
    if (cycles <= 0) return moments;

    TrajectoryEvent ev = walker.next();
    while (ev.kind != EventKind::Absorption) ev = walker.next(); // warm-up

    int boundary = ev.state.value;
    double income = 0.0;
    while (moments.cycles < cycles) {
        ev = walker.next();
        income += ev.income_delta;
        if (ev.kind == EventKind::Absorption) {
            moments.add(income, boundary);
            boundary = ev.state.value;
            income = 0.0;
        }
    }
    return moments;
}

SimulationStats simulate(const ChainSpec& spec, const Strategy& strategy, std::int64_t cycles,
                         std::uint64_t seed, std::int64_t replications,
                         const SimulationOptions& options) {
    check_inputs(spec, strategy);
    if (cycles < 1 || replications < 1) {
        throw std::invalid_argument("cycles and replications must be positive");
    }
    const auto parts = kernels::replications(spec, strategy, cycles, seed, replications, options);
    CycleMoments pooled;
    for (const auto& p : parts) pooled.merge(p);
    return pooled.stats();
}

std::vector<TrajectoryEvent> sample_trajectory(const ChainSpec& spec, const Strategy& strategy,
                                               std::int64_t max_steps, std::uint64_t seed) {
    check_inputs(spec, strategy);
    std::vector<TrajectoryEvent> events;
    events.reserve(static_cast<size_t>(std::max<std::int64_t>(max_steps, 0)));
    Walker walker(spec, strategy, derive_seed(seed, 0), SimulationOptions{});
    for (std::int64_t k = 0; k < max_steps; ++k) events.push_back(walker.next());
    return events;
}

std::array<std::int64_t, 2> absorption_counts(const ChainSpec& spec, Label start,
                                              std::int64_t segments, std::uint64_t seed,
                                              const SimulationOptions& options) {
    require_valid(spec);
    if (index_of(start) < 0 || index_of(start) >= spec.n_internal) {
        throw TuningError(ErrorCode::LabelOutOfRange, "start label is not an internal state");
    }
    const TransitionSampler sampler(spec, uniform_strategy(spec.n_internal));
    Rng rng(seed);
    std::array<std::int64_t, 2> counts{};
    for (std::int64_t k = 0; k < segments; ++k) {
        Label state = start;
        std::uint64_t steps = 0;
        while (!is_boundary(state)) {
            if (++steps > options.max_segment_steps) {
                throw TuningError(ErrorCode::CycleLimit,
                                  "free evolution exceeded the segment step limit");
            }
            state = sampler.step(index_of(state), rng);
        }
        ++counts[static_cast<size_t>(state.value)];
    }
    return counts;
}

} // namespace tuning
