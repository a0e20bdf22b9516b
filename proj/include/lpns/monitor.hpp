#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lpns/config.hpp"
#include "lpns/norm_spec.hpp"
#include "lpns/params.hpp"
#include "lpns/report.hpp"
#include "lpns/vector_calculus.hpp"

namespace lpns {

/// Which criterion quantities to evaluate along a trajectory.
struct CriteriaConfig {
    std::vector<double> logE_list;                         // E values for the log-weighted norms of u^3
    std::vector<std::pair<double, double>> p_alpha_list;   // (p, alpha) applied to d3 u^3
    std::vector<std::pair<double, double>> m_beta_list;    // (m, beta) applied to omega^3
    std::vector<std::pair<double, double>> qp_list;        // (q, p) applied to both fields
    double gronwall_c = 1.0;

    static CriteriaConfig from_config(const Config& cfg) {
        CriteriaConfig c;
        if (cfg.has("criteria.logE_list")) c.logE_list = cfg.get_double_list("criteria.logE_list");
        if (cfg.has("criteria.p_alpha_list")) c.p_alpha_list = cfg.get_pair_list("criteria.p_alpha_list");
        if (cfg.has("criteria.m_beta_list")) c.m_beta_list = cfg.get_pair_list("criteria.m_beta_list");
        if (cfg.has("criteria.qp_list")) c.qp_list = cfg.get_pair_list("criteria.qp_list");
        c.gronwall_c = cfg.get_double_or("criteria.gronwall_c", 1.0);
        return c;
    }
};

struct CriterionSeries {
    std::string field;  // u3 | d3u3 | omega3
    std::string norm;   // canonical NormSpec string
    double power = 0.0; // time-integral exponent; 0 means sup-type (no integral)
    bool in_gronwall = false;
    std::vector<double> values;
    std::vector<double> running_integral; // trapezoidal integral of values^power
    std::vector<double> running_sup;      // for sup-type series
    std::vector<std::vector<int>> attaining_index; // per sample, [j] or [k, j]; empty if n/a

    std::string label() const { return field + ":" + norm; }
};

struct CriterionReport {
    std::vector<double> times;
    std::vector<CriterionSeries> series;
    std::vector<double> grad_sq;          // measured ||grad u(t)||_{L2}^2
    std::vector<double> gronwall_bound;   // grad_sq[0] * exp(c * sum of criterion integrals)
    double gronwall_c = 1.0;
    bool gronwall_dominates = false;      // measured <= bound * (1 + 1e-3) everywhere
    double gronwall_max_ratio = 0.0;
    std::vector<double> resolution_margin; // spectral mass fraction beyond the 2/3 band
};

namespace detail {

inline void accumulate_integral(CriterionSeries& s, const std::vector<double>& times) {
    if (s.power == 0.0) {
        double sup = 0.0;
        s.running_sup.clear();
        for (double v : s.values) {
            sup = std::max(sup, v);
            s.running_sup.push_back(sup);
        }
        return;
    }
    s.running_integral.clear();
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double cur = std::pow(s.values[i], s.power);
        if (i > 0) {
            const double inc = 0.5 * (cur + prev) * (times[i] - times[i - 1]);
            if (!(inc >= 0.0))
                throw std::logic_error("internal error: non-monotone running integral for series " +
                                       s.label());
            acc += inc;
        }
        prev = cur;
        s.running_integral.push_back(acc);
    }
}

inline double band_mass_fraction(const VectorField& u) {
    const FourierGrid& g = u.grid();
    const int K1 = dealias_limit(g.n(0)), K2 = dealias_limit(g.n(1)), K3 = dealias_limit(g.n(2));
    double tail = 0.0, total = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const double mass = std::norm(u.comp(1)[idx]) + std::norm(u.comp(2)[idx]) +
                            std::norm(u.comp(3)[idx]);
        total += mass;
        if (std::abs(k1) > K1 || std::abs(k2) > K2 || std::abs(k3) > K3) tail += mass;
    });
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace detail

/// Evaluates every configured criterion quantity at each snapshot of the
/// trajectory, with running trapezoidal integrals and the Gronwall comparison
/// bound. Parameters are validated up front; the Gronwall exponent collects
/// the (p,alpha)/(m,beta) integrals when configured, else the (q,p) ones.
inline CriterionReport criteria_series(const std::vector<double>& times,
                                       const std::vector<VectorField>& snapshots,
                                       const DyadicFilterBank& bank, const CriteriaConfig& cc) {
    if (times.size() != snapshots.size())
        throw std::invalid_argument("times and snapshots differ in length");
    if (times.empty()) throw std::invalid_argument("missing snapshots: empty trajectory");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("snapshot times must be strictly increasing");

    CriterionReport rep;
    rep.times = times;
    rep.gronwall_c = cc.gronwall_c;

    // declare all series up front (parameters validated here)
    const bool use_qp_for_gronwall = cc.p_alpha_list.empty() && cc.m_beta_list.empty();
    for (double E : cc.logE_list) {
        validate_log_weight(E);
        for (LogDirection dir : {LogDirection::Horizontal, LogDirection::Vertical, LogDirection::Min}) {
            NormSpec n;
            n.family = NormSpec::Family::LogHalf;
            n.dir = dir;
            n.E = E;
            rep.series.push_back({"u3", format(n), 0.0, false, {}, {}, {}, {}});
        }
    }
    auto push_aniso = [&](const std::string& field, double p, double alpha) {
        const auto v = validate_p_alpha(p, alpha);
        NormSpec n;
        n.family = NormSpec::Family::AnisoBesov;
        n.t = v.alpha;
        n.s = v.s_val;
        n.p1 = n.p2 = 2.0;
        n.r1 = n.r2 = kInf;
        rep.series.push_back({field, format(n), v.p, true, {}, {}, {}, {}});
    };
    for (const auto& [p, alpha] : cc.p_alpha_list) push_aniso("d3u3", p, alpha);
    for (const auto& [m, beta] : cc.m_beta_list) push_aniso("omega3", m, beta);
    for (const auto& [q, p] : cc.qp_list) {
        const auto v = validate_qp(q, p);
        NormSpec n;
        n.family = NormSpec::Family::Besov;
        n.s = v.exponent;
        n.p1 = q;
        n.r1 = kInf;
        for (const char* field : {"d3u3", "omega3"})
            rep.series.push_back({field, format(n), v.p, use_qp_for_gronwall, {}, {}, {}, {}});
    }

    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const VectorField& u = snapshots[i];
        if (u.grid() != bank.grid())
            throw std::invalid_argument("snapshot grid does not match bank grid");
        const ScalarField& u3 = u.comp(3);
        const ScalarField d3u3 = derivative(u3, 3);
        const ScalarField w3 = vorticity3(u);
        rep.grad_sq.push_back(grad_l2_sq(u));
        rep.resolution_margin.push_back(detail::band_mass_fraction(u));

        for (auto& s : rep.series) {
            const ScalarField& f = (s.field == "u3") ? u3 : (s.field == "d3u3") ? d3u3 : w3;
            const NormSpec n = parse_norm_spec(s.norm);
            if (n.family == NormSpec::Family::Besov) {
                const auto res = besov_detailed(bank, f, n.s, n.p1, n.r1);
                s.values.push_back(res.value);
                s.attaining_index.push_back(
                    res.attaining_index ? std::vector<int>{*res.attaining_index} : std::vector<int>{});
            } else if (n.family == NormSpec::Family::AnisoBesov) {
                const auto res = aniso_besov_detailed(bank, f, n.t, n.s, n.p1, n.r1, n.p2, n.r2);
                s.values.push_back(res.value);
                s.attaining_index.push_back(res.attaining_index
                                                ? std::vector<int>{res.attaining_index->first,
                                                                   res.attaining_index->second}
                                                : std::vector<int>{});
            } else {
                s.values.push_back(evaluate(n, bank, f));
                s.attaining_index.push_back({});
            }
        }
    }

    for (auto& s : rep.series) detail::accumulate_integral(s, rep.times);

    // Gronwall comparison: bound(t) = grad_sq(0) * exp(c * sum of integrals)
    rep.gronwall_bound.assign(rep.times.size(), rep.grad_sq.empty() ? 0.0 : rep.grad_sq.front());
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        double expo = 0.0;
        for (const auto& s : rep.series)
            if (s.in_gronwall && !s.running_integral.empty()) expo += s.running_integral[i];
        rep.gronwall_bound[i] = rep.grad_sq.front() * std::exp(cc.gronwall_c * expo);
    }
    rep.gronwall_max_ratio = 0.0;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        if (rep.gronwall_bound[i] > 0.0)
            rep.gronwall_max_ratio = std::max(rep.gronwall_max_ratio,
                                              rep.grad_sq[i] / rep.gronwall_bound[i]);
    }
    rep.gronwall_dominates = rep.gronwall_max_ratio <= 1.0 + 1e-3;
    return rep;
}

inline json criteria_report_json(const CriterionReport& rep, const FourierGrid& grid,
                                 const std::string& config_hash, const CriteriaConfig& cc) {
    json j = report_header("criteria", grid, config_hash);
    j["monitor_notice"] = kMonitorNotice;
    json cj;
    cj["logE_list"] = cc.logE_list;
    cj["p_alpha_list"] = cc.p_alpha_list;
    cj["m_beta_list"] = cc.m_beta_list;
    cj["qp_list"] = cc.qp_list;
    cj["gronwall_c"] = cc.gronwall_c;
    j["criteria"] = cj;
    j["times"] = rep.times;
    json series = json::array();
    for (const auto& s : rep.series) {
        json sj;
        sj["label"] = s.label();
        sj["field"] = s.field;
        sj["norm"] = s.norm;
        sj["values"] = s.values;
        if (s.power > 0.0) {
            sj["integral_power"] = s.power;
            sj["running_integral"] = s.running_integral;
        } else {
            sj["running_sup"] = s.running_sup;
        }
        bool any_attain = false;
        for (const auto& a : s.attaining_index)
            if (!a.empty()) any_attain = true;
        if (any_attain) sj["attaining_index"] = s.attaining_index;
        series.push_back(sj);
    }
    j["series"] = series;
    j["grad_l2_sq"] = rep.grad_sq;
    json gw;
    gw["c"] = rep.gronwall_c;
    gw["bound"] = rep.gronwall_bound;
    gw["dominates"] = rep.gronwall_dominates;
    gw["max_ratio"] = rep.gronwall_max_ratio;
    gw["slack"] = 1e-3;
    j["gronwall"] = gw;
    j["resolution_margin"] = rep.resolution_margin;
    return j;
}

/// One CSV row per sample: t, every series value (headers quoted; they
/// contain commas).
inline std::string criteria_series_csv(const CriterionReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "t";
    for (const auto& s : rep.series) os << ",\"" << s.label() << "\"";
    os << ",grad_l2_sq,gronwall_bound\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        os << rep.times[i];
        for (const auto& s : rep.series) os << "," << s.values[i];
        os << "," << rep.grad_sq[i] << "," << rep.gronwall_bound[i] << "\n";
    }
    return os.str();
}

} // namespace lpns
