#pragma once
// Truncated Taylor series arithmetic. A Jet of order n holds the coefficients
// c_k = f^{(k)}(x0)/k! for k = 0..n, which gives exact derivatives of
// compositions of elementary functions.

#include <vector>

namespace btl {

class Jet {
public:
    Jet() = default;
    Jet(double value, int order);           // constant
    static Jet variable(double x0, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double value() const { return c_[0]; }
    double coeff(int k) const { return c_[k]; }
    double derivative(int k) const;          // f^{(k)}(x0)
    std::vector<double>& coeffs() { return c_; }
    const std::vector<double>& coeffs() const { return c_; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double a) { c_[0] += a; return *this; }
    Jet& operator-=(double a) { c_[0] -= a; return *this; }
    Jet& operator*=(double a);
    Jet& operator/=(double a) { return *this *= (1.0 / a); }

private:
    std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);
Jet operator-(const Jet& a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, double e);    // requires a.value() > 0 unless e is a nonnegative integer
Jet sqrt(const Jet& a);
Jet cos(const Jet& a);
Jet sin(const Jet& a);

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace btl
