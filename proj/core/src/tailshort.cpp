#include "fbmc/tailshort.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "fbmc/util.hpp"

namespace fbmc {

namespace {

struct EdgeLayout {
    int q0;
    long out_lo, out_hi;
    long in_lo, in_hi;
};

EdgeLayout edge_layout(const BurstConfig& config, Edge edge) {
    const long half = config.half_stride();
    const long span = static_cast<long>(config.eta) * config.M;
    EdgeLayout lay{};
    if (edge == Edge::tail) {
        lay.q0 = config.N;
        lay.out_lo = config.burst_end + 1;
        lay.out_hi = config.extended_end();
        lay.in_lo = static_cast<long>(config.N) * half;  // first virtual sample
        lay.in_hi = config.burst_end;
    } else {
        lay.q0 = -config.V;
        lay.out_lo = config.extended_begin();
        lay.out_hi = config.burst_begin - 1;
        lay.in_lo = config.burst_begin;
        lay.in_hi = -half + span;  // last sample of the q = -1 pulse
    }
    if (lay.out_hi < lay.out_lo)
        throw ConfigError("cancellation: empty suppression range (boundary "
                          "beyond the extended support)");
    if (lay.in_hi < lay.in_lo)
        throw ConfigError("cancellation: empty in-band range (boundary before "
                          "the virtual-symbol support)");
    return lay;
}

// Stacked [Re; Im] basis matrix over [k_lo, k_hi], one column per
// (carrier, virtual slot), slots varying slowest.
Eigen::MatrixXd stacked_basis(const PrototypeFilter& filter,
                              const BurstConfig& config, int q0, long k_lo,
                              long k_hi) {
    const int M = config.M;
    const long half = config.half_stride();
    const long span = static_cast<long>(filter.length()) - 1;
    const long rows = k_hi - k_lo + 1;
    const auto n_act = static_cast<Eigen::Index>(config.carriers.size());
    Eigen::MatrixXd out =
        Eigen::MatrixXd::Zero(2 * rows, n_act * config.V);

    std::vector<cplx> twiddle(static_cast<std::size_t>(M));
    for (int t = 0; t < M; ++t)
        twiddle[static_cast<std::size_t>(t)] =
            std::polar(1.0, 2.0 * std::numbers::pi * t / M);

    for (int qi = 0; qi < config.V; ++qi) {
        const long q = q0 + qi;
        const long base = q * half;
        const long r_lo = std::max<long>(0, k_lo - base);
        const long r_hi = std::min<long>(span, k_hi - base);
        for (Eigen::Index mi = 0; mi < n_act; ++mi) {
            const long p = config.carriers[static_cast<std::size_t>(mi)];
            const cplx ph = [&] {
                switch (((p + q) % 4 + 4) % 4) {
                    case 0: return cplx{1, 0};
                    case 1: return cplx{0, 1};
                    case 2: return cplx{-1, 0};
                    default: return cplx{0, -1};
                }
            }();
            const Eigen::Index col = static_cast<Eigen::Index>(qi) * n_act + mi;
            for (long r = r_lo; r <= r_hi; ++r) {
                const long k = base + r;
                const cplx v = filter.taps[static_cast<std::size_t>(r)] *
                               twiddle[static_cast<std::size_t>(((p * k) % M + M) % M)] *
                               ph;
                out(k - k_lo, col) = v.real();
                out(rows + (k - k_lo), col) = v.imag();
            }
        }
    }
    return out;
}

}  // namespace

Method method_from_string(const std::string& name) {
    if (name == "none") return Method::none;
    if (name == "hard") return Method::hard;
    if (name == "windowed") return Method::windowed;
    if (name == "virtual") return Method::virtual_symbols;
    if (name == "virtual+truncate") return Method::virtual_truncate;
    throw ConfigError("unknown method '" + name +
                      "' (none, hard, windowed, virtual, virtual+truncate)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::none: return "none";
        case Method::hard: return "hard";
        case Method::windowed: return "windowed";
        case Method::virtual_symbols: return "virtual";
        case Method::virtual_truncate: return "virtual+truncate";
    }
    return "?";
}

ComplexSignal hard_truncate(const ComplexSignal& signal, long k_b, long k_e) {
    if (k_b > k_e) throw ConfigError("hard_truncate: inverted bounds");
    ComplexSignal out = signal;
    for (long k = out.begin_index(); k <= out.end_index(); ++k)
        if (k < k_b || k > k_e) out.ref(k) = cplx{};
    return out;
}

ComplexSignal windowed_truncate(const ComplexSignal& signal, long k_b, long k_e,
                                long l_ro) {
    if (k_b > k_e) throw ConfigError("windowed_truncate: inverted bounds");
    if (l_ro < 0 || l_ro > k_e - k_b)
        throw ConfigError("windowed_truncate: roll-off longer than the kept extent");
    ComplexSignal out = signal;
    for (long k = out.begin_index(); k <= out.end_index(); ++k) {
        double w = 1.0;
        if (k < k_b || k > k_e) {
            w = 0.0;
        } else if (l_ro > 0) {
            if (k >= k_e - l_ro)
                w = 0.5 + 0.5 * std::cos((k - (k_e - l_ro)) * std::numbers::pi / l_ro);
            if (k <= k_b + l_ro)
                w = std::min(w, 0.5 + 0.5 * std::cos((k_b + l_ro - k) *
                                                     std::numbers::pi / l_ro));
        }
        out.ref(k) *= w;
    }
    return out;
}

std::uint64_t design_config_hash(const PrototypeFilter& filter,
                                 const BurstConfig& config, Edge edge) {
    std::uint64_t h = fnv1a64("fbmc-design-v1", 14);
    auto mix = [&h](const void* p, std::size_t n) { h = fnv1a64(p, n, h); };
    const long ints[] = {config.M,          config.eta,      config.N,
                         config.V,          config.burst_begin,
                         config.burst_end,  static_cast<long>(edge)};
    mix(ints, sizeof(ints));
    mix(&config.gamma, sizeof(double));
    mix(config.carriers.data(), config.carriers.size() * sizeof(int));
    mix(filter.taps.data(), filter.taps.size() * sizeof(double));
    return h;
}

CancellationDesign build_design(const PrototypeFilter& filter,
                                const BurstConfig& config, Edge edge) {
    config.validate();
    filter.validate();
    if (filter.samples_per_symbol != config.M ||
        filter.overlap_factor != config.eta)
        throw ConfigError("filter does not match the burst configuration");
    if (config.V < 1) throw ConfigError("build_design: V must be >= 1");

    const EdgeLayout lay = edge_layout(config, edge);
    const Eigen::MatrixXd gt1 =
        stacked_basis(filter, config, lay.q0, lay.out_lo, lay.out_hi);
    const Eigen::MatrixXd gt2 =
        stacked_basis(filter, config, lay.q0, lay.in_lo, lay.in_hi);

    CancellationDesign d;
    d.edge = edge;
    d.q0 = lay.q0;
    d.out_lo = lay.out_lo;
    d.out_hi = lay.out_hi;
    d.in_lo = lay.in_lo;
    d.in_hi = lay.in_hi;
    d.gamma = config.gamma;
    // User-facing gamma maps onto the quadratic penalty weight. Calibrated
    // against the reference operating points: weight = gamma^2 / 2.
    d.weight = 0.5 * config.gamma * config.gamma;
    d.config_hash = design_config_hash(filter, config, edge);

    const Eigen::Index n_cols = gt1.cols();
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(n_cols, n_cols);
    normal.selfadjointView<Eigen::Lower>().rankUpdate(gt1.transpose());
    if (d.weight > 0.0)
        normal.selfadjointView<Eigen::Lower>().rankUpdate(gt2.transpose(),
                                                          d.weight);
    normal = normal.selfadjointView<Eigen::Lower>();

    const Eigen::MatrixXd rhs = gt1.transpose();
    const double rhs_norm = rhs.norm();

    auto residual_of = [&](const Eigen::MatrixXd& b) {
        return (normal * b - rhs).norm() / rhs_norm;
    };

    Eigen::LLT<Eigen::MatrixXd> llt(normal);
    bool solved = false;
    if (llt.info() == Eigen::Success) {
        d.B = llt.solve(rhs);
        // One refinement pass per check; ill conditioning at small weights
        // otherwise leaves the normal-equation residual above target.
        double res = residual_of(d.B);
        for (int it = 0; it < 3 && res > 1e-12; ++it) {
            d.B += llt.solve(rhs - normal * d.B);
            const double next = residual_of(d.B);
            if (next >= res) break;
            res = next;
        }
        d.normal_residual = res;
        const auto& L = llt.matrixLLT();
        double dmin = L(0, 0), dmax = L(0, 0);
        for (Eigen::Index i = 1; i < n_cols; ++i) {
            dmin = std::min(dmin, L(i, i));
            dmax = std::max(dmax, L(i, i));
        }
        d.cond_estimate = (dmax / dmin) * (dmax / dmin);
        solved = d.normal_residual <= 1e-9;
    }

    if (!solved) {
        // Rank-deficient normal matrix: minimum-norm least-squares solve.
        Eigen::BDCSVD<Eigen::MatrixXd> svd(
            normal, Eigen::ComputeThinU | Eigen::ComputeThinV);
        d.B = svd.solve(rhs);
        d.normal_residual = residual_of(d.B);
        const auto& sv = svd.singularValues();
        const double smax = sv(0);
        double smin = smax;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > smax * 1e-14) smin = sv(i);
        d.cond_estimate = smax / smin;
        d.used_pseudo_inverse = true;
        if (d.normal_residual > 1e-9)
            throw NumericalError("cancellation design did not reach the "
                                 "normal-equation residual target");
    }
    return d;
}

ApplyResult apply_design(const ComplexSignal& signal,
                         const CancellationDesign& design,
                         const PrototypeFilter& filter,
                         const BurstConfig& config) {
    if (design.config_hash != design_config_hash(filter, config, design.edge))
        throw ConfigError("cancellation design does not match this configuration");

    const long n_out = design.n_out();
    Eigen::VectorXd stacked(2 * n_out);
    for (long i = 0; i < n_out; ++i) {
        const cplx v = signal.at(design.out_lo + i);
        stacked(i) = v.real();
        stacked(n_out + i) = v.imag();
    }

    const Eigen::VectorXd a = -(design.B * stacked);

    ApplyResult result;
    result.block.edge = design.edge;
    result.block.q0 = design.q0;
    const auto n_act = static_cast<Eigen::Index>(config.carriers.size());
    result.block.values.resize(n_act, config.V);
    for (int qi = 0; qi < config.V; ++qi)
        for (Eigen::Index mi = 0; mi < n_act; ++mi)
            result.block.values(mi, qi) =
                a(static_cast<Eigen::Index>(qi) * n_act + mi);

    result.cancellation =
        synthesize_block(result.block.values, design.q0, filter, config);
    result.shortened = signal;
    result.shortened.accumulate(result.cancellation);
    return result;
}

ComplexSignal shorten(const PamGrid& grid, const PrototypeFilter& filter,
                      const BurstConfig& config, Method method,
                      const ShortenOptions& options) {
    ComplexSignal s = synthesize(grid, filter, config);
    switch (method) {
        case Method::none:
            return s;
        case Method::hard:
            return hard_truncate(s, config.burst_begin, config.burst_end);
        case Method::windowed:
            return windowed_truncate(s, config.burst_begin, config.burst_end,
                                     options.window_rolloff);
        case Method::virtual_symbols:
        case Method::virtual_truncate:
            break;
    }
    if (config.N < 2 * config.eta)
        throw ConfigError("virtual-symbol shortening needs N >= 2*eta; the "
                          "head and tail problems couple for shorter bursts");
    if (options.head == nullptr || options.tail == nullptr)
        throw ConfigError("virtual-symbol shortening needs both edge designs");
    ComplexSignal out = apply_design(s, *options.tail, filter, config).shortened;
    out = apply_design(out, *options.head, filter, config).shortened;
    if (method == Method::virtual_truncate)
        out = hard_truncate(out, config.burst_begin, config.burst_end);
    return out;
}

}  // namespace fbmc
