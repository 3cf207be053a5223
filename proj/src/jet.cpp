#include "btl/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace btl {

Jet::Jet(double value, int order) : c_(static_cast<size_t>(order) + 1, 0.0) { c_[0] = value; }

Jet Jet::variable(double x0, int order) {
    Jet j(x0, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
}

Jet& Jet::operator+=(const Jet& o) {
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(double a) {
    for (auto& v : c_) v *= a;
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    std::vector<double> r(c_.size(), 0.0);
    for (size_t k = 0; k < c_.size(); ++k)
        for (size_t i = 0; i <= k; ++i) r[k] += c_[i] * o.c_[k - i];
    c_ = std::move(r);
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    if (o.c_[0] == 0.0) throw std::domain_error("jet division by zero");
    std::vector<double> r(c_.size(), 0.0);
    for (size_t k = 0; k < c_.size(); ++k) {
        double s = c_[k];
        for (size_t i = 1; i <= k; ++i) s -= o.c_[i] * r[k - i];
        r[k] = s / o.c_[0];
    }
    c_ = std::move(r);
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(const Jet& a, const Jet& b) { Jet r = a; return r *= b; }
Jet operator/(const Jet& a, const Jet& b) { Jet r = a; return r /= b; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a -= s; }
Jet operator-(double s, const Jet& a) { Jet r = -a; return r += s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a) { return Jet(s, a.order()) / a; }
Jet operator-(const Jet& a) { Jet r = a; return r *= -1.0; }

// exp: g' = g a'  =>  k g_k = sum_{i=1..k} i a_i g_{k-i}
Jet exp(const Jet& a) {
    const int n = a.order();
    Jet g(std::exp(a.value()), n);
    auto& gc = g.coeffs();
    const auto& ac = a.coeffs();
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * ac[i] * gc[k - i];
        gc[k] = s / k;
    }
    return g;
}

// log: a g' = a'  =>  k a_0 g_k = k a_k - sum_{i=1..k-1} i g_i a_{k-i}
Jet log(const Jet& a) {
    if (a.value() <= 0.0) throw std::domain_error("jet log of nonpositive value");
    const int n = a.order();
    Jet g(std::log(a.value()), n);
    auto& gc = g.coeffs();
    const auto& ac = a.coeffs();
    for (int k = 1; k <= n; ++k) {
        double s = k * ac[k];
        for (int i = 1; i < k; ++i) s -= i * gc[i] * ac[k - i];
        gc[k] = s / (k * ac[0]);
    }
    return g;
}

// g = a^e: a g' = e a' g  =>  a_0 k g_k = sum_{i=1..k} (e i - (k - i)) a_i g_{k-i}
Jet pow(const Jet& a, double e) {
    const int n = a.order();
    if (e == std::floor(e) && e >= 0.0 && e <= 64.0) {
        Jet r(1.0, n);
        for (int i = 0; i < static_cast<int>(e); ++i) r *= a;
        return r;
    }
    if (a.value() <= 0.0) throw std::domain_error("jet pow of nonpositive base");
    Jet g(std::pow(a.value(), e), n);
    auto& gc = g.coeffs();
    const auto& ac = a.coeffs();
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += (e * i - (k - i)) * ac[i] * gc[k - i];
        gc[k] = s / (k * ac[0]);
    }
    return g;
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

namespace {
void sincos_jet(const Jet& a, Jet& s, Jet& c) {
    const int n = a.order();
    s = Jet(std::sin(a.value()), n);
    c = Jet(std::cos(a.value()), n);
    auto& sc = s.coeffs();
    auto& cc = c.coeffs();
    const auto& ac = a.coeffs();
    for (int k = 1; k <= n; ++k) {
        double ss = 0.0, cs = 0.0;
        for (int i = 1; i <= k; ++i) {
            ss += i * ac[i] * cc[k - i];
            cs -= i * ac[i] * sc[k - i];
        }
        sc[k] = ss / k;
        cc[k] = cs / k;
    }
}
}  // namespace

Jet cos(const Jet& a) { Jet s, c; sincos_jet(a, s, c); return c; }
Jet sin(const Jet& a) { Jet s, c; sincos_jet(a, s, c); return s; }

}  // namespace btl
