#include "smx/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "smx/errors.hpp"
#include "smx/norms.hpp"
#include "smx/rng.hpp"

namespace smx {

namespace {

struct Pair {
    index_t a;
    index_t b;  // a < b
};

std::uint64_t pair_key(index_t a, index_t b, index_t n) {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(b);
}

/// Per-column off-diagonal quotas summing to 2*pairs, each capped at n-1.
std::vector<index_t> make_quotas(index_t n, index_t pairs, MatrixKind kind, Rng& rng) {
    const index_t total = 2 * pairs;
    std::vector<double> weight(static_cast<std::size_t>(n), 1.0);
    if (kind == MatrixKind::unbalanced) {
        // contiguous quartiles with distinct fill levels; assignment order is seeded
        std::vector<double> mult = {1.9, 1.15, 0.55, 0.4};
        rng.shuffle(mult);
        for (index_t j = 0; j < n; ++j) {
            const std::size_t q = std::min<std::size_t>(3, static_cast<std::size_t>(4 * j / n));
            weight[static_cast<std::size_t>(j)] = mult[q];
        }
    }
    const double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);

    std::vector<index_t> quota(static_cast<std::size_t>(n));
    index_t assigned = 0;
    for (index_t j = 0; j < n; ++j) {
        const double share = static_cast<double>(total) * weight[static_cast<std::size_t>(j)] / wsum;
        index_t q = static_cast<index_t>(std::floor(share));
        q = std::min(q, n - 1);
        quota[static_cast<std::size_t>(j)] = q;
        assigned += q;
    }
    // distribute the rounding remainder over columns with spare capacity
    std::vector<index_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::size_t cursor = 0;
    while (assigned < total) {
        bool progressed = false;
        for (std::size_t step = 0; step < order.size() && assigned < total; ++step) {
            const std::size_t j = static_cast<std::size_t>(order[(cursor + step) % order.size()]);
            if (quota[j] < n - 1) {
                ++quota[j];
                ++assigned;
                progressed = true;
            }
        }
        cursor = (cursor + 1) % order.size();
        if (!progressed) break;  // everything at capacity
    }
    return quota;
}

/// Random symmetric edge set realizing the quotas as closely as possible:
/// shuffled stub matching with retry passes and a deterministic repair sweep.
std::vector<Pair> match_stubs(index_t n, const std::vector<index_t>& quota, Rng& rng) {
    std::vector<index_t> stubs;
    for (index_t j = 0; j < n; ++j) {
        stubs.insert(stubs.end(), static_cast<std::size_t>(quota[static_cast<std::size_t>(j)]), j);
    }

    std::vector<Pair> edges;
    edges.reserve(stubs.size() / 2);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(stubs.size());

    for (int pass = 0; pass < 30 && stubs.size() >= 2; ++pass) {
        rng.shuffle(stubs);
        std::vector<index_t> leftover;
        for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
            index_t a = stubs[k], b = stubs[k + 1];
            if (a == b) {
                leftover.push_back(a);
                leftover.push_back(b);
                continue;
            }
            if (a > b) std::swap(a, b);
            if (!seen.insert(pair_key(a, b, n)).second) {
                leftover.push_back(a);
                leftover.push_back(b);
                continue;
            }
            edges.push_back({a, b});
        }
        if (stubs.size() % 2 == 1) leftover.push_back(stubs.back());
        if (leftover.size() == stubs.size()) break;  // no progress
        stubs = std::move(leftover);
    }

    // repair: pair remaining deficit columns where an edge slot is still free
    if (stubs.size() >= 2) {
        std::vector<index_t> deficit(static_cast<std::size_t>(n), 0);
        for (index_t j : stubs) ++deficit[static_cast<std::size_t>(j)];
        std::vector<index_t> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        for (index_t a : order) {
            while (deficit[static_cast<std::size_t>(a)] > 0) {
                bool paired = false;
                for (index_t b : order) {
                    if (b == a || deficit[static_cast<std::size_t>(b)] == 0) continue;
                    const index_t lo = std::min(a, b), hi = std::max(a, b);
                    if (seen.insert(pair_key(lo, hi, n)).second) {
                        edges.push_back({lo, hi});
                        --deficit[static_cast<std::size_t>(a)];
                        --deficit[static_cast<std::size_t>(b)];
                        paired = true;
                        break;
                    }
                }
                if (!paired) {
                    --deficit[static_cast<std::size_t>(a)];  // drop the stub
                }
            }
        }
    }
    return edges;
}

/// Weighted sampling of `pairs` edges from the complete graph; used when the
/// target is dense enough that stub matching would thrash on collisions.
std::vector<Pair> sample_dense(index_t n, index_t pairs, MatrixKind kind, Rng& rng) {
    std::vector<double> weight(static_cast<std::size_t>(n), 1.0);
    if (kind == MatrixKind::unbalanced) {
        std::vector<double> mult = {1.9, 1.15, 0.55, 0.4};
        rng.shuffle(mult);
        for (index_t j = 0; j < n; ++j) {
            const std::size_t q = std::min<std::size_t>(3, static_cast<std::size_t>(4 * j / n));
            weight[static_cast<std::size_t>(j)] = mult[q];
        }
    }
    struct Keyed {
        double key;
        index_t a, b;
    };
    std::vector<Keyed> all;
    all.reserve(static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2);
    for (index_t a = 0; a < n; ++a) {
        for (index_t b = a + 1; b < n; ++b) {
            // Efraimidis-Spirakis: smallest -log(u)/w win
            const double u = std::max(rng.unit(), 1e-300);
            const double w = weight[static_cast<std::size_t>(a)] * weight[static_cast<std::size_t>(b)];
            all.push_back({-std::log(u) / w, a, b});
        }
    }
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(pairs), all.size());
    std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                     [](const Keyed& x, const Keyed& y) { return x.key < y.key; });
    std::vector<Pair> edges;
    edges.reserve(take);
    for (std::size_t k = 0; k < take; ++k) edges.push_back({all[k].a, all[k].b});
    return edges;
}

/// Signed extreme eigenvalues of a symmetric matrix: power iteration for the
/// dominant eigenvalue, then for the one farthest from it on the shifted
/// matrix. Factor-of-2 kappa accuracy does not need tight estimates here.
void extreme_eigenvalues(const CscMatrix& m, Rng& rng, double& mu_min, double& mu_max) {
    const std::size_t n = static_cast<std::size_t>(m.n);
    std::vector<double> v(n), w(n);
    auto randomize = [&rng](std::vector<double>& x) {
        double s = 0.0;
        for (double& e : x) {
            e = rng.uniform(-1.0, 1.0);
            s += e * e;
        }
        s = std::sqrt(std::max(s, 1e-300));
        for (double& e : x) e /= s;
    };

    auto dominant = [&](double shift) {
        randomize(v);
        double rayleigh = 0.0;
        for (int it = 0; it < 150; ++it) {
            matvec(m, v.data(), w.data());
            if (shift != 0.0) {
                for (std::size_t i = 0; i < n; ++i) w[i] -= shift * v[i];
            }
            double r = 0.0, s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                r += v[i] * w[i];
                s += w[i] * w[i];
            }
            s = std::sqrt(s);
            if (s == 0.0) return 0.0;
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / s;
            if (it > 4 && std::fabs(r - rayleigh) <= 1e-3 * std::fabs(r)) return r;
            rayleigh = r;
        }
        return rayleigh;
    };

    const double lam_dom = dominant(0.0);
    const double lam_far = lam_dom + dominant(lam_dom);
    mu_min = std::min(lam_dom, lam_far);
    mu_max = std::max(lam_dom, lam_far);
}

}  // namespace

CscMatrix generate_sparse_spd(const GeneratorSpec& spec) {
    if (spec.n < 1) throw Error(Errc::infeasible_spec, "generate_sparse_spd: n must be positive");
    if (!(spec.d > 0.0) || spec.d > 1.0) {
        throw Error(Errc::infeasible_spec, "generate_sparse_spd: density must be in (0, 1]");
    }
    if (spec.d * static_cast<double>(spec.n) < 1.0) {
        throw Error(Errc::infeasible_spec, "generate_sparse_spd: d*n < 1, diagonal does not fit");
    }
    if (!(spec.kappa >= 1.0)) {
        throw Error(Errc::infeasible_spec, "generate_sparse_spd: kappa must be >= 1");
    }

    const index_t n = spec.n;
    Rng rng(spec.seed);

    const double nnz_target = spec.d * static_cast<double>(n) * static_cast<double>(n);
    const std::uint64_t max_pairs =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    index_t pairs = static_cast<index_t>(std::llround((nnz_target - static_cast<double>(n)) / 2.0));
    pairs = std::max<index_t>(0, std::min<index_t>(pairs, static_cast<index_t>(max_pairs)));

    // Diagonal-only request: hit kappa exactly with a spread of diagonal values.
    if (pairs == 0) {
        std::vector<Triplet> trip;
        trip.reserve(static_cast<std::size_t>(n));
        for (index_t j = 0; j < n; ++j) {
            const double t = n > 1 ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
            trip.push_back({j, j, std::pow(spec.kappa, t)});
        }
        // shuffle which column gets which value
        std::vector<index_t> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        for (index_t j = 0; j < n; ++j) {
            trip[static_cast<std::size_t>(j)].row = order[static_cast<std::size_t>(j)];
            trip[static_cast<std::size_t>(j)].col = order[static_cast<std::size_t>(j)];
        }
        return csc_from_triplets(trip, n);
    }

    std::vector<Pair> edges;
    const bool dense_request =
        max_pairs > 0 && static_cast<double>(pairs) >= 0.35 * static_cast<double>(max_pairs) &&
        max_pairs <= 50'000'000ull;
    if (dense_request) {
        edges = sample_dense(n, pairs, spec.kind, rng);
    } else {
        edges = match_stubs(n, make_quotas(n, pairs, spec.kind, rng), rng);
    }

    // Random symmetric values on the pattern, zero diagonal for now.
    std::vector<Triplet> trip;
    trip.reserve(2 * edges.size() + static_cast<std::size_t>(n));
    for (const Pair& e : edges) {
        const double mag = rng.uniform(0.1, 1.0);
        const double v = rng.next_u64() & 1 ? mag : -mag;
        trip.push_back({e.a, e.b, v});
        trip.push_back({e.b, e.a, v});
    }
    CscMatrix m = csc_from_triplets(trip, n);

    // A = I + s*M with s placing the spectrum at the requested kappa:
    // (1 + s*mu_max) / (1 + s*mu_min) = kappa, mu_min < 0 < mu_max.
    double mu_min = 0.0, mu_max = 0.0;
    extreme_eigenvalues(m, rng, mu_min, mu_max);
    const double kappa_eff = std::max(spec.kappa, 1.05);  // s=0 would store explicit zeros
    const double denom = mu_max - kappa_eff * mu_min;
    double s = denom > 0.0 ? (kappa_eff - 1.0) / denom : 1.0;

    auto build = [&](double scale) {
        std::vector<Triplet> out;
        out.reserve(trip.size() + static_cast<std::size_t>(n));
        for (const Triplet& t : trip) out.push_back({t.row, t.col, scale * t.value});
        for (index_t j = 0; j < n; ++j) out.push_back({j, j, 1.0});
        return csc_from_triplets(out, n);
    };

    // The closed-form s rests on estimated extremes; for larger kappa the
    // estimation error can push lambda_min across zero. kappa(s) is monotone
    // in s, so verify and bisect. Everything here is deterministic.
    auto measure = [&](const CscMatrix& a) {
        try {
            return estimate_condition(a, 1e-3, 80).kappa;
        } catch (const Error& e) {
            if (e.code == Errc::breakdown_on_indefinite) {
                return std::numeric_limits<double>::infinity();
            }
            throw;
        }
    };

    CscMatrix a = build(s);
    double measured = measure(a);
    if (!(measured <= 1.4 * kappa_eff && measured >= kappa_eff / 1.4)) {
        double lo = 0.0, hi = 0.0;
        if (measured > kappa_eff) {
            hi = s;
        } else {
            lo = s;
            hi = s;
            for (int grow = 0; grow < 60; ++grow) {
                hi *= 2.0;
                const double k_hi = measure(build(hi));
                if (k_hi >= kappa_eff) break;
                lo = hi;
            }
        }
        for (int step = 0; step < 40; ++step) {
            s = 0.5 * (lo + hi);
            a = build(s);
            measured = measure(a);
            if (measured <= 1.4 * kappa_eff && measured >= kappa_eff / 1.4) break;
            (measured > kappa_eff ? hi : lo) = s;
        }
    }
    return a;
}

}  // namespace smx
