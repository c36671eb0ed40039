#include "ghm/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "ghm/muckenhoupt.hpp"

namespace ghm {

namespace {

double offdiag_frobenius_sq(const std::vector<double>& a, std::size_t n) {
    KahanSum s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s.add(2.0 * a[i * n + j] * a[i * n + j]);
    return s.value();
}

} // namespace

std::vector<double> eigenvalues_sym(std::vector<double> a, std::size_t n) {
    if (n == 0) throw InvalidParameter("empty matrix");
    if (a.size() != n * n) throw InvalidParameter("matrix storage size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i * n + j] != a[j * n + i]) throw NotSymmetric("matrix is not symmetric");

    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) norm_sq += a[i * n + j] * a[i * n + j];
    const double stop_sq = 1e-28 * norm_sq; // (1e-14 ||A||_F)^2

    constexpr std::size_t kMaxSweeps = 64;
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius_sq(a, n) < stop_sq) {
            std::vector<double> ev(n);
            for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
            std::sort(ev.begin(), ev.end(), std::greater<double>());
            return ev;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta); // avoid overflow in theta^2
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                double* rowp = a.data() + p * n;
                double* rowq = a.data() + q * n;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = rowp[r];
                    const double arq = rowq[r];
                    rowp[r] = arp - s * (arq + tau * arp);
                    rowq[r] = arq + s * (arp - tau * arq);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    a[r * n + p] = rowp[r];
                    a[r * n + q] = rowq[r];
                }
            }
        }
    }
    throw Error("jacobi eigensolver did not converge");
}

std::vector<double> eigenvalues_sym(const TruncatedHilbertMatrix& m) {
    return eigenvalues_sym(m.data(), m.size());
}

double log_gamma(const NodeWeightSequence& seq, std::size_t k) {
    if (k == 0) throw InvalidParameter("log_gamma: k must be >= 1");
    if (seq.finite() && seq.finite_size() < k)
        throw PrefixTooShort("log_gamma: k beyond custom sequence");
    std::vector<double> xs(k), ds(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = seq.x(i + 1);
        ds[i] = seq.d(i + 1);
    }
    KahanSum acc;
    for (std::size_t i = 0; i < k; ++i) {
        if (ds[i] == 0.0) return -std::numeric_limits<double>::infinity();
        acc.add(2.0 * std::log(ds[i]));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double diff = xs[i] - xs[j];
            if (diff == 0.0) throw DuplicateNode("log_gamma: duplicate node");
            acc.add(2.0 * std::log(std::abs(diff)));
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) acc.add(-std::log(xs[i] + xs[j]));
    return acc.value();
}

double lower_bound_sigma(const NodeWeightSequence& seq, std::size_t k) {
    const double lg = log_gamma(seq, k);
    if (k == 1) return lg; // det(H^1) = lambda_1 <= sigma_1
    if (!std::isfinite(lg)) return lg;
    KahanSum half_trace;
    for (std::size_t i = 1; i <= k; ++i)
        half_trace.add(0.5 * seq.d(i) * seq.d(i) / seq.x(i));
    const double km1 = static_cast<double>(k - 1);
    return lg - km1 * std::log(half_trace.value() / km1);
}

BoundInterval upper_bound_sigma(const NodeWeightSequence& seq, std::size_t k,
                                std::size_t K_scan) {
    return btilde(seq, k, K_scan);
}

std::shared_ptr<const std::vector<double>> SpectrumCache::eigenvalues(std::size_t K) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        const auto it = memo_.find(K);
        if (it != memo_.end()) return it->second;
    }
    auto ev = std::make_shared<const std::vector<double>>(
        eigenvalues_sym(TruncatedHilbertMatrix(seq_, K)));
    std::lock_guard<std::mutex> lock(mu_);
    const auto [it, inserted] = memo_.emplace(K, std::move(ev));
    return it->second;
}

void SpectrumCache::warm(std::span<const std::size_t> sizes) {
    std::vector<std::size_t> todo(sizes.begin(), sizes.end());
    std::sort(todo.begin(), todo.end(), std::greater<>()); // big ones first
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()), 4u);
    std::vector<std::future<void>> fut;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        fut.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= todo.size()) return;
                eigenvalues(todo[i]);
            }
        }));
    }
    for (auto& f : fut) f.get();
}

std::vector<std::size_t> default_schedule(std::size_t k, std::size_t cap) {
    std::vector<std::size_t> v;
    std::size_t K = std::max<std::size_t>(2, k);
    if (K >= cap) return {std::max(K, cap)};
    while (K <= cap) {
        v.push_back(K);
        if (K > cap / 2) break;
        K *= 2;
    }
    if (v.back() != cap) v.push_back(cap);
    return v;
}

SpectralSandwich sandwich_report(const NodeWeightSequence& seq, std::size_t k,
                                 std::span<const std::size_t> schedule,
                                 std::size_t K_scan, SpectrumCache* cache) {
    if (k == 0) throw InvalidParameter("sandwich: k must be >= 1");
    if (schedule.empty()) throw InvalidParameter("sandwich: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw InvalidParameter("sandwich: schedule must be strictly ascending");
    if (schedule.back() < k)
        throw InvalidParameter("sandwich: schedule maximum must be >= k");

    SpectralSandwich out;
    out.k = k;
    out.log_lower = lower_bound_sigma(seq, k);
    out.upper = upper_bound_sigma(seq, k, K_scan);
    const double lower_val = std::exp(out.log_lower);

    std::ostringstream violations;
    double prev_trusted = -1.0;
    std::size_t last_K = 0;
    for (const std::size_t Kraw : schedule) {
        const std::size_t K =
            seq.finite() ? std::min(Kraw, seq.finite_size()) : Kraw;
        if (K < k || K == last_K) continue;
        last_K = K;
        std::shared_ptr<const std::vector<double>> owned;
        const std::vector<double>* ev;
        if (cache) {
            owned = cache->eigenvalues(K);
            ev = owned.get();
        } else {
            owned = std::make_shared<const std::vector<double>>(
                eigenvalues_sym(TruncatedHilbertMatrix(seq, K)));
            ev = owned.get();
        }
        const double lambda = (*ev)[k - 1];
        const bool trusted = lambda > kEigenTrustRatio * (*ev)[0];
        out.ladder.push_back({K, lambda, trusted});

        KahanSum sum_ev;
        for (const double e : *ev) sum_ev.add(e);
        KahanSum tr_acc;
        for (std::size_t i = 1; i <= K; ++i)
            tr_acc.add(seq.d(i) * seq.d(i) / (2.0 * seq.x(i)));
        const double tr = tr_acc.value();
        const double resid = std::abs(sum_ev.value() - tr) / std::max(tr, 1e-300);
        out.trace_residuals.emplace_back(K, resid);
        if (resid > 1e-10)
            violations << "trace residual " << resid << " at K=" << K << "; ";

        if (!trusted) continue;
        if (lambda < lower_val * (1.0 - 1e-9))
            violations << "lambda_" << k << "(H^" << K << ")=" << lambda
                       << " below lower bound " << lower_val << "; ";
        if (lambda > out.upper.upper * (1.0 + 1e-9))
            violations << "lambda_" << k << "(H^" << K << ")=" << lambda
                       << " above upper bound " << out.upper.upper << "; ";
        if (prev_trusted >= 0.0 && lambda < prev_trusted * (1.0 - 1e-9))
            violations << "ladder not nondecreasing at K=" << K << "; ";
        prev_trusted = lambda;
    }
    const std::string msg = violations.str();
    if (!msg.empty()) throw SandwichViolation("sandwich invariants violated: " + msg);
    return out;
}

} // namespace ghm
