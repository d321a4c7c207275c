#include "surflap/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

namespace surflap {
namespace {

struct Triple {
    std::uint8_t i, j, k;
};

struct Layout {
    int nvars = 0;
    int count[kMaxJetOrder + 1] = {};
    int nterms = 0;
    std::array<std::array<int, kMaxJetVars>, kMaxJetTerms> alpha{};
    std::array<int, kMaxJetTerms> degree{};
    std::array<double, kMaxJetTerms> factorial{};
    // up[idx][v]: index of alpha(idx) + e_v, -1 beyond order 3
    std::array<std::array<int, kMaxJetVars>, kMaxJetTerms> up{};
    std::vector<Triple> triples;  // sorted by degree of k
    int triple_count[kMaxJetOrder + 1] = {};

    int index_of(const std::array<int, kMaxJetVars>& a) const {
        for (int t = 0; t < nterms; ++t) {
            if (alpha[t] == a) return t;
        }
        return -1;
    }
};

void enumerate(int nvars, int remaining, int var, std::array<int, kMaxJetVars>& cur,
               std::vector<std::array<int, kMaxJetVars>>& out) {
    if (var == nvars - 1) {
        cur[var] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[var] = e;
        enumerate(nvars, remaining - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

Layout build_layout(int nvars) {
    Layout L;
    L.nvars = nvars;
    std::vector<std::array<int, kMaxJetVars>> all;
    for (int d = 0; d <= kMaxJetOrder; ++d) {
        if (nvars == 0) {
            if (d == 0) all.push_back({0, 0, 0, 0});
        } else {
            std::array<int, kMaxJetVars> cur{};
            enumerate(nvars, d, 0, cur, all);
        }
        L.count[d] = static_cast<int>(all.size());
    }
    L.nterms = static_cast<int>(all.size());
    for (int t = 0; t < L.nterms; ++t) {
        L.alpha[t] = all[t];
        int deg = 0;
        double fact = 1.0;
        for (int v = 0; v < kMaxJetVars; ++v) {
            deg += all[t][v];
            for (int m = 2; m <= all[t][v]; ++m) fact *= m;
        }
        L.degree[t] = deg;
        L.factorial[t] = fact;
    }
    for (int t = 0; t < L.nterms; ++t) {
        for (int v = 0; v < kMaxJetVars; ++v) {
            auto a = L.alpha[t];
            a[v] += 1;
            L.up[t][v] = (v < nvars) ? L.index_of(a) : -1;
        }
    }
    for (int i = 0; i < L.nterms; ++i) {
        for (int j = 0; j < L.nterms; ++j) {
            if (L.degree[i] + L.degree[j] > kMaxJetOrder) continue;
            std::array<int, kMaxJetVars> a{};
            for (int v = 0; v < kMaxJetVars; ++v) a[v] = L.alpha[i][v] + L.alpha[j][v];
            L.triples.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                                 static_cast<std::uint8_t>(L.index_of(a))});
        }
    }
    std::stable_sort(L.triples.begin(), L.triples.end(), [&](const Triple& x, const Triple& y) {
        return L.degree[x.k] < L.degree[y.k];
    });
    for (int d = 0; d <= kMaxJetOrder; ++d) {
        L.triple_count[d] = static_cast<int>(
            std::count_if(L.triples.begin(), L.triples.end(),
                          [&](const Triple& x) { return L.degree[x.k] <= d; }));
    }
    return L;
}

const Layout& layout(int nvars) {
    static const std::array<Layout, kMaxJetVars + 1> layouts = [] {
        std::array<Layout, kMaxJetVars + 1> ls;
        for (int n = 0; n <= kMaxJetVars; ++n) ls[n] = build_layout(n);
        return ls;
    }();
    return layouts[nvars];
}

int common_nvars(const Jet& a, const Jet& b) {
    if (a.is_scalar()) return b.nvars();
    if (b.is_scalar() || a.nvars() == b.nvars()) return a.nvars();
    throw DomainError("jet arithmetic across different variable sets (" +
                      std::to_string(a.nvars()) + " vs " + std::to_string(b.nvars()) + ")");
}

std::array<int, kMaxJetVars> multi_index(std::initializer_list<int> vars) {
    std::array<int, kMaxJetVars> a{};
    for (int v : vars) {
        if (v < 0 || v >= kMaxJetVars) throw DomainError("jet variable index out of range");
        a[v] += 1;
    }
    return a;
}

}  // namespace

Jet::Jet(int nvars, int order, double value) : nvars_(nvars), order_(order) {
    if (nvars < 0 || nvars > kMaxJetVars) throw DomainError("jet supports at most 4 variables");
    if (order < 0 || order > kMaxJetOrder) throw DomainError("jet order must be in [0, 3]");
    c_[0] = value;
}

Jet Jet::variable(int nvars, int order, int index, double value) {
    if (index < 0 || index >= nvars) throw DomainError("jet variable index out of range");
    Jet j(nvars, order, value);
    if (order >= 1) j.c_[1 + index] = 1.0;  // degree-1 monomials follow the constant, e_0 first
    return j;
}

int Jet::size() const { return layout(nvars_).count[order_]; }

double Jet::partial(std::span<const int> alpha) const {
    std::array<int, kMaxJetVars> a{};
    int deg = 0;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
        if (static_cast<int>(v) >= nvars_ && alpha[v] != 0) return 0.0;
        if (v < kMaxJetVars) a[v] = alpha[v];
        deg += alpha[v];
    }
    if (deg > order_) throw DomainError("requested derivative exceeds jet order");
    const Layout& L = layout(nvars_);
    int idx = L.index_of(a);
    return idx < 0 ? 0.0 : c_[idx] * L.factorial[idx];
}

double Jet::d(int i) const {
    auto a = multi_index({i});
    return partial(a);
}
double Jet::d(int i, int j) const {
    auto a = multi_index({i, j});
    return partial(a);
}
double Jet::d(int i, int j, int k) const {
    auto a = multi_index({i, j, k});
    return partial(a);
}

Jet Jet::derivative(int var) const {
    if (is_scalar()) return Jet();
    if (var < 0 || var >= nvars_) throw DomainError("jet variable index out of range");
    if (order_ == 0) throw DomainError("cannot differentiate an order-0 jet");
    const Layout& L = layout(nvars_);
    Jet r(nvars_, order_ - 1);
    for (int t = 0; t < L.count[order_ - 1]; ++t) {
        r.c_[t] = (L.alpha[t][var] + 1) * c_[L.up[t][var]];
    }
    return r;
}

Jet Jet::truncated(int order) const {
    if (is_scalar() || order >= order_) return *this;
    Jet r(nvars_, order);
    const int n = r.size();
    std::copy_n(c_.begin(), n, r.c_.begin());
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    const int nv = common_nvars(*this, o);
    const int ord = std::min(order_, o.order_);
    Jet r = truncated(ord);
    r.nvars_ = nv;
    r.order_ = ord;
    const int n = r.size();
    for (int t = 0; t < n; ++t) r.c_[t] += o.c_[t];
    return *this = r;
}

Jet& Jet::operator-=(const Jet& o) {
    const int nv = common_nvars(*this, o);
    const int ord = std::min(order_, o.order_);
    Jet r = truncated(ord);
    r.nvars_ = nv;
    r.order_ = ord;
    const int n = r.size();
    for (int t = 0; t < n; ++t) r.c_[t] -= o.c_[t];
    return *this = r;
}

Jet& Jet::operator*=(double s) {
    const int n = size();
    for (int t = 0; t < n; ++t) c_[t] *= s;
    return *this;
}

Jet operator-(Jet a) {
    a *= -1.0;
    return a;
}

Jet operator*(const Jet& a, const Jet& b) {
    const int nv = common_nvars(a, b);
    const int ord = std::min(a.order_, b.order_);
    if (a.is_scalar()) return b.truncated(ord) * a.c_[0];
    if (b.is_scalar()) return a.truncated(ord) * b.c_[0];
    const Layout& L = layout(nv);
    Jet r(nv, ord);
    const int nt = L.triple_count[ord];
    for (int q = 0; q < nt; ++q) {
        const Triple& tr = L.triples[q];
        r.c_[tr.k] += a.c_[tr.i] * b.c_[tr.j];
    }
    return r;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this * reciprocal(o); }
Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

std::string Jet::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "Jet(nvars=" << nvars_ << ", order=" << order_ << ", [";
    for (int t = 0; t < size(); ++t) os << (t ? ", " : "") << c_[t];
    os << "])";
    return os.str();
}

Jet compose_series(const Jet& inner, std::span<const double> taylor) {
    if (taylor.empty()) throw DomainError("empty Taylor series");
    const int terms = std::min<int>(static_cast<int>(taylor.size()) - 1, inner.order());
    if (inner.is_scalar() || terms == 0) {
        Jet r = inner.truncated(std::max(terms, 0));
        const int n = r.size();
        for (int t = 1; t < n; ++t) r.c_[t] = 0.0;
        r.c_[0] = taylor[0];
        return r;
    }
    Jet delta = inner.truncated(terms);
    delta.c_[0] = 0.0;
    Jet r(delta.nvars(), terms, taylor[terms]);
    for (int k = terms - 1; k >= 0; --k) {
        r = r * delta;
        r.c_[0] += taylor[k];
    }
    return r;
}

Jet compose(const Jet& outer, const Jet& inner) {
    if (outer.is_scalar()) return Jet(inner.nvars(), inner.order(), outer.value());
    if (outer.nvars() != 1) throw DomainError("compose expects a univariate outer jet");
    std::array<double, kMaxJetOrder + 1> t{};
    for (int k = 0; k <= outer.order(); ++k) t[k] = outer.coeff(k);
    return compose_series(inner, std::span<const double>(t.data(), outer.order() + 1));
}

Jet integrate_univariate(const Jet& f, int order) {
    if (f.nvars() != 1) throw DomainError("integrate_univariate expects a univariate jet");
    const int ord = std::min(order, f.order() + 1);
    Jet r(1, ord);
    for (int k = 0; k + 1 <= ord; ++k) r.coeff(k + 1) = f.coeff(k) / (k + 1);
    return r;
}

Jet sin(const Jet& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    const double t[] = {s, c, -s / 2.0, -c / 6.0};
    return compose_series(x, t);
}

Jet cos(const Jet& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    const double t[] = {c, -s, -c / 2.0, s / 6.0};
    return compose_series(x, t);
}

Jet exp(const Jet& x) {
    const double e = std::exp(x.value());
    const double t[] = {e, e, e / 2.0, e / 6.0};
    return compose_series(x, t);
}

Jet log(const Jet& x) {
    const double v = x.value();
    if (!(v > 0.0)) throw DomainError("log of non-positive value");
    const double t[] = {std::log(v), 1.0 / v, -1.0 / (2.0 * v * v), 1.0 / (3.0 * v * v * v)};
    return compose_series(x, t);
}

Jet sqrt(const Jet& x) {
    const double v = x.value();
    if (v < 0.0) throw DomainError("sqrt of negative value");
    if (v == 0.0 && !x.is_scalar() && x.order() > 0) {
        throw DomainError("sqrt is not differentiable at zero");
    }
    const double s = std::sqrt(v);
    if (v == 0.0) return x.truncated(0) * 0.0;
    const double t[] = {s, 0.5 / s, -0.125 / (s * v), 0.0625 / (s * v * v)};
    return compose_series(x, t);
}

Jet reciprocal(const Jet& x) {
    const double v = x.value();
    if (v == 0.0) throw DomainError("division by zero value part");
    const double r = 1.0 / v;
    const double t[] = {r, -r * r, r * r * r, -r * r * r * r};
    return compose_series(x, t);
}

Jet pow(const Jet& x, int n) {
    if (n < 0) return reciprocal(pow(x, -n));
    Jet result = Jet(x.nvars(), x.order(), 1.0);
    Jet base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Jet pow(const Jet& x, double p) {
    if (std::nearbyint(p) == p && std::abs(p) <= 64.0) return pow(x, static_cast<int>(p));
    const double v = x.value();
    if (!(v > 0.0)) throw DomainError("non-integer power of non-positive value");
    const double x0 = std::pow(v, p);
    const double t[] = {x0, p * x0 / v, p * (p - 1.0) / 2.0 * x0 / (v * v),
                        p * (p - 1.0) * (p - 2.0) / 6.0 * x0 / (v * v * v)};
    return compose_series(x, t);
}

}  // namespace surflap
