#include "ws/periodic.hpp"

#include "ws/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ws {

PeriodicFunction::PeriodicFunction(double period, int dim, int modes)
    : period_(period), dim_(dim), modes_(modes) {
    if (!(period > 0.0)) throw ValidationError("periodic function: period must be positive");
    if (dim < 1 || dim > 3) throw ValidationError("periodic function: dimension must be 1, 2 or 3");
    if (modes < 0) throw ValidationError("periodic function: negative mode count");
    for (int c = 0; c < 3; ++c) {
        cos_[c].assign(modes + 1, 0.0);
        sin_[c].assign(modes + 1, 0.0);
    }
}

PeriodicFunction PeriodicFunction::from_samples(double period, int dim, int modes,
                                                const std::vector<Vec3>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 2 * modes + 1) throw ValidationError("periodic fit: need at least 2K+1 samples");
    PeriodicFunction f(period, dim, modes);
    const double w = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
        const double c1 = std::cos(w * j), s1 = std::sin(w * j);
        double ck = 1.0, sk = 0.0;
        const Vec3& v = samples[j];
        for (int c = 0; c < dim; ++c) f.cos_[c][0] += v[c];
        for (int k = 1; k <= modes; ++k) {
            const double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
            for (int c = 0; c < dim; ++c) {
                f.cos_[c][k] += v[c] * ck;
                f.sin_[c][k] += v[c] * sk;
            }
        }
        // Recurrence drift is reset every sample, so error stays O(K eps).
    }
    for (int c = 0; c < dim; ++c) {
        f.cos_[c][0] /= n;
        for (int k = 1; k <= modes; ++k) {
            const double scale = (2 * k == n) ? 1.0 / n : 2.0 / n;
            f.cos_[c][k] *= scale;
            f.sin_[c][k] *= scale;
        }
    }
    return f;
}

PeriodicFunction PeriodicFunction::from_function(double period, int dim, int modes,
                                                 const std::function<Vec3(double)>& fn, int n) {
    if (n <= 0) n = std::max(64, 4 * modes);
    std::vector<Vec3> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = fn(period * j / n);
    return from_samples(period, dim, modes, samples);
}

Vec3 PeriodicFunction::eval(double s, int m) const {
    Vec3 out = Vec3::Zero();
    if (m == 0) {
        out = drift_ * s;
        for (int c = 0; c < dim_; ++c) out[c] += cos_[c][0];
    } else if (m == 1) {
        out = drift_;
    }
    if (modes_ == 0) return out;
    const double w = 2.0 * std::numbers::pi / period_;
    // Reduce the phase first so large |s| keeps full accuracy.
    double x = std::fmod(s, period_);
    const double th = w * x;
    const double c1 = std::cos(th), s1 = std::sin(th);
    double ck = 1.0, sk = 0.0;
    for (int k = 1; k <= modes_; ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        const double kw = k * w;
        double fac = 1.0;
        for (int i = 0; i < m; ++i) fac *= kw;
        // d^m/ds^m [a cos + b sin] = fac * (a cos(th + m pi/2) + b sin(th + m pi/2))
        double cm, sm;
        switch (m & 3) {
            case 0: cm = ck; sm = sk; break;
            case 1: cm = -sk; sm = ck; break;
            case 2: cm = -ck; sm = -sk; break;
            default: cm = sk; sm = -ck; break;
        }
        for (int c = 0; c < dim_; ++c) out[c] += fac * (cos_[c][k] * cm + sin_[c][k] * sm);
    }
    return out;
}

PeriodicFunction PeriodicFunction::derivative(int m) const {
    PeriodicFunction g(period_, dim_, modes_);
    const double w = 2.0 * std::numbers::pi / period_;
    if (m == 0) return *this;
    if (m == 1)
        for (int c = 0; c < dim_; ++c) g.cos_[c][0] = drift_[c];
    for (int k = 1; k <= modes_; ++k) {
        const double fac = std::pow(k * w, m);
        for (int c = 0; c < dim_; ++c) {
            const double a = cos_[c][k], b = sin_[c][k];
            double na, nb;
            switch (m & 3) {
                case 0: na = a; nb = b; break;
                case 1: na = b; nb = -a; break;
                case 2: na = -a; nb = -b; break;
                default: na = -b; nb = a; break;
            }
            g.cos_[c][k] = fac * na;
            g.sin_[c][k] = fac * nb;
        }
    }
    return g;
}

PeriodicFunction PeriodicFunction::antiderivative() const {
    if (drift_.norm() != 0.0) throw ValidationError("antiderivative of a function with linear part");
    PeriodicFunction g(period_, dim_, modes_);
    const double w = 2.0 * std::numbers::pi / period_;
    for (int c = 0; c < dim_; ++c) {
        g.drift_[c] = cos_[c][0];
        for (int k = 1; k <= modes_; ++k) {
            const double kw = k * w;
            g.cos_[c][k] = -sin_[c][k] / kw;
            g.sin_[c][k] = cos_[c][k] / kw;
        }
    }
    return g;
}

PeriodicFunction PeriodicFunction::shifted(double h) const {
    PeriodicFunction g(*this);
    const double w = 2.0 * std::numbers::pi / period_;
    for (int c = 0; c < dim_; ++c) {
        g.cos_[c][0] += drift_[c] * h;
        for (int k = 1; k <= modes_; ++k) {
            const double ch = std::cos(k * w * h), sh = std::sin(k * w * h);
            const double a = cos_[c][k], b = sin_[c][k];
            // a cos(k w (s+h)) + b sin(k w (s+h))
            g.cos_[c][k] = a * ch + b * sh;
            g.sin_[c][k] = b * ch - a * sh;
        }
    }
    return g;
}

PeriodicFunction PeriodicFunction::resized(int modes) const {
    PeriodicFunction g(period_, dim_, modes);
    g.drift_ = drift_;
    const int kk = std::min(modes, modes_);
    for (int c = 0; c < dim_; ++c)
        for (int k = 0; k <= kk; ++k) {
            g.cos_[c][k] = cos_[c][k];
            g.sin_[c][k] = sin_[c][k];
        }
    return g;
}

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& o) {
    if (std::abs(o.period_ - period_) > 1e-12 * period_)
        throw ValidationError("periodic functions with different periods");
    if (o.modes_ > modes_) *this = resized(o.modes_);
    dim_ = std::max(dim_, o.dim_);
    for (int c = 0; c < o.dim_; ++c)
        for (int k = 0; k <= o.modes_; ++k) {
            cos_[c][k] += o.cos_[c][k];
            sin_[c][k] += o.sin_[c][k];
        }
    drift_ += o.drift_;
    return *this;
}

PeriodicFunction& PeriodicFunction::operator*=(double f) {
    for (int c = 0; c < 3; ++c) {
        for (double& v : cos_[c]) v *= f;
        for (double& v : sin_[c]) v *= f;
    }
    drift_ *= f;
    return *this;
}

std::vector<Vec3> PeriodicFunction::sample(int n) const {
    std::vector<Vec3> out(n);
    for (int j = 0; j < n; ++j) out[j] = eval(period_ * j / n);
    return out;
}

Vec3 PeriodicFunction::mean() const {
    Vec3 m = Vec3::Zero();
    for (int c = 0; c < dim_; ++c) m[c] = cos_[c][0];
    return m;
}

double PeriodicFunction::tail_magnitude() const {
    double t = 0.0;
    for (int k = std::max(1, modes_ - modes_ / 4); k <= modes_; ++k)
        for (int c = 0; c < dim_; ++c) t = std::max({t, std::abs(cos_[c][k]), std::abs(sin_[c][k])});
    return t;
}

bool PeriodicFunction::operator==(const PeriodicFunction& o) const {
    if (period_ != o.period_ || dim_ != o.dim_ || modes_ != o.modes_ || drift_ != o.drift_) return false;
    for (int c = 0; c < 3; ++c)
        if (cos_[c] != o.cos_[c] || sin_[c] != o.sin_[c]) return false;
    return true;
}

PeriodicFunction fit_periodic(double period, int dim, const std::function<Vec3(double)>& f, double tol,
                              int max_modes) {
    PeriodicFunction g;
    for (int k = 32; k <= max_modes; k *= 2) {
        g = PeriodicFunction::from_function(period, dim, k, f, 4 * k);
        if (g.tail_magnitude() < tol) break;
    }
    return g;
}

}  // namespace ws
