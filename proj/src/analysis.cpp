#include "bob/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bob/errors.hpp"

namespace bob {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
constexpr Scalar gl_x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                            0.9602898564975363};
constexpr Scalar gl_w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                            0.1012285362903763};

template <class F>
Scalar gauss_integrate(F&& f, Scalar a, Scalar b, std::size_t n_nodes) {
    const std::size_t panels = std::max<std::size_t>(1, (n_nodes + 7) / 8);
    const Scalar hw = (b - a) / static_cast<Scalar>(panels);
    Scalar total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const Scalar mid = a + (static_cast<Scalar>(p) + 0.5) * hw;
        const Scalar half = 0.5 * hw;
        Scalar acc = 0.0;
        for (int i = 0; i < 4; ++i)
            acc += gl_w[i] * (f(mid + half * gl_x[i]) + f(mid - half * gl_x[i]));
        total += acc * half;
    }
    return total;
}

Scalar boundary_speed(const Shape& shape, Scalar t) {
    if (const auto* disc = std::get_if<Disc>(&shape)) return disc->radius;
    if (const auto* el = std::get_if<Ellipse>(&shape))
        return std::hypot(el->semi_major * std::sin(t), el->semi_minor * std::cos(t));
    if (const auto* arc = std::get_if<ParabolaArc>(&shape))
        return std::hypot(1.0, -2.0 * arc->height * t);
    throw std::invalid_argument("arc quadrature needs a smooth shape");
}

Scalar phase_distance(const PhasePoint& a, const PhasePoint& b) {
    return (a.p - b.p).norm() + std::abs(angle_delta(a.v, b.v));
}

} // namespace

Scalar retro_deviation(const Shape& shape, const Vec2& p) {
    const Angle v = bisector_direction(shape, p);
    const auto bounce = ray_intersect(shape, p, v);
    if (!bounce) throw LeftVisibility("bisector ray misses the shape");
    const Angle reflected = reflect_across(bounce->tangent_dir, v);
    const Angle back = Angle::of_vector(p - bounce->point);
    return angle_delta(reflected, back);
}

std::vector<PhasePoint> find_fixed_points(const Shape& shape, const CircleLoop& loop,
                                          std::size_t n_samples) {
    constexpr Scalar zero_tol = 1e-13;
    const auto at = [&](Scalar t) -> Vec2 {
        return loop.center + loop.radius * Vec2{std::cos(t), std::sin(t)};
    };

    std::vector<Scalar> dev(n_samples);
    std::vector<bool> valid(n_samples, false);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const Scalar t = kTwoPi * static_cast<Scalar>(i) / static_cast<Scalar>(n_samples);
        try {
            dev[i] = retro_deviation(shape, at(t));
            valid[i] = true;
        } catch (const BilliardError&) {
        }
    }

    std::vector<PhasePoint> fixed;
    auto emit = [&](Scalar t) {
        const Vec2 p = at(t);
        PhasePoint pp{p, bisector_direction(shape, p)};
        const StepTrace trace = step(shape, pp);
        if (phase_distance(trace.output, pp) < 1e-8) fixed.push_back(pp);
    };

    for (std::size_t i = 0; i < n_samples; ++i) {
        if (!valid[i]) continue;
        const Scalar ti = kTwoPi * static_cast<Scalar>(i) / static_cast<Scalar>(n_samples);
        if (std::abs(dev[i]) < zero_tol) {
            try {
                emit(ti);
            } catch (const BilliardError&) {
            }
            continue;
        }
        const std::size_t j = (i + 1) % n_samples;
        if (!valid[j] || std::abs(dev[j]) < zero_tol) continue;
        if (dev[i] * dev[j] > 0.0) continue;
        // bracketed sign change: bisect on the loop parameter
        Scalar lo = ti, hi = ti + kTwoPi / static_cast<Scalar>(n_samples);
        Scalar flo = dev[i];
        while (hi - lo > 1e-10) {
            const Scalar mid = 0.5 * (lo + hi);
            Scalar fmid;
            try {
                fmid = retro_deviation(shape, at(mid));
            } catch (const BilliardError&) {
                break;
            }
            if (fmid == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fmid < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        try {
            emit(0.5 * (lo + hi));
        } catch (const BilliardError&) {
        }
    }
    return fixed;
}

QuadraturePair lemma_quadrature(const ArcSpec& arc, std::size_t n_nodes) {
    // Effective parameter span, honoring the traversal direction on closed
    // shapes (Disc/Ellipse parameters are 2*pi-periodic).
    Scalar delta = arc.s2 - arc.s0;
    const bool closed = std::holds_alternative<Disc>(arc.shape) ||
                        std::holds_alternative<Ellipse>(arc.shape);
    if (closed) {
        if (arc.param_increasing && delta <= 0.0) delta += kTwoPi;
        if (!arc.param_increasing && delta >= 0.0) delta -= kTwoPi;
    } else if ((delta > 0.0) != arc.param_increasing) {
        throw std::invalid_argument("arc orientation contradicts its endpoints");
    }
    if (delta == 0.0) throw std::invalid_argument("empty arc");

    const auto param = [&](Scalar sigma) { return arc.s0 + sigma * delta; };
    const auto k_at = [&](Scalar sigma) { return curvature_at(arc.shape, param(sigma)); };
    const auto ds = [&](Scalar sigma) {
        return boundary_speed(arc.shape, param(sigma)) * std::abs(delta);
    };

    // Monotonicity screen: constant curvature passes (the equality case),
    // mixed slopes do not.
    constexpr std::size_t screen = 256;
    Scalar kmax = 0.0;
    std::vector<Scalar> ks(screen + 1);
    for (std::size_t i = 0; i <= screen; ++i) {
        ks[i] = k_at(static_cast<Scalar>(i) / screen);
        kmax = std::max(kmax, std::abs(ks[i]));
    }
    const Scalar flat_tol = 1e-12 * std::max(kmax, Scalar{1.0});
    bool up = false, down = false;
    for (std::size_t i = 0; i < screen; ++i) {
        if (ks[i + 1] - ks[i] > flat_tol) up = true;
        if (ks[i] - ks[i + 1] > flat_tol) down = true;
    }
    if (up && down) throw NotMonotone("curvature is not monotone along the arc");

    const auto turn_rate = [&](Scalar sigma) { return k_at(sigma) * ds(sigma); };
    const auto K = [&](Scalar sigma) {
        if (sigma <= 0.0) return Scalar{0.0};
        const auto nodes = std::max<std::size_t>(64, static_cast<std::size_t>(n_nodes * sigma));
        return gauss_integrate(turn_rate, 0.0, sigma, nodes);
    };

    const Scalar k_total = K(1.0);
    if (k_total >= kPi)
        throw std::invalid_argument("arc turns too far; end tangents do not cross outside");

    // locate s1 with K(s1) = K(total)/2
    Scalar lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
        const Scalar mid = 0.5 * (lo + hi);
        (K(mid) < 0.5 * k_total ? lo : hi) = mid;
    }
    const Scalar s1 = 0.5 * (lo + hi);

    QuadraturePair out;
    out.lhs = gauss_integrate([&](Scalar s) { return std::sin(k_total - K(s)) * ds(s); }, s1, 1.0,
                              n_nodes);
    out.rhs = gauss_integrate([&](Scalar s) { return std::sin(K(s)) * ds(s); }, 0.0, s1, n_nodes);
    return out;
}

Matrix3 bounce_jacobian_closed_form(Scalar k, Scalar a, Scalar b) {
    if (b == 0.0) throw std::invalid_argument("bounce-centered coordinates need b != 0");
    const Scalar c2 = a * a + b * b;
    Matrix3 m;
    m << 1.0 + 2.0 * k * b, -2.0 * k * a - 2.0 * a / b, 2.0 * c2 / b + 2.0 * k * c2, //
        2.0 * k * a, 1.0 - 2.0 * k * a * a / b, 2.0 * k * a * c2 / b,                //
        -2.0 * k, 2.0 * k * a / b, -1.0 - 2.0 * k * c2 / b;
    return m;
}

Matrix3 finite_diff_jacobian(const Shape& shape, const PhasePoint& pp, Scalar eps) {
    auto map3 = [&](Scalar dx, Scalar dy, Scalar dv) {
        PhasePoint probe{pp.p + Vec2{dx, dy}, Angle{pp.v.radians() + dv}};
        return step(shape, probe).output;
    };

    auto central = [&](Scalar h) {
        Matrix3 jac;
        try {
            for (int j = 0; j < 3; ++j) {
                const Scalar dx = j == 0 ? h : 0.0;
                const Scalar dy = j == 1 ? h : 0.0;
                const Scalar dv = j == 2 ? h : 0.0;
                const PhasePoint plus = map3(dx, dy, dv);
                const PhasePoint minus = map3(-dx, -dy, -dv);
                jac(0, j) = (plus.p.x() - minus.p.x()) / (2.0 * h);
                jac(1, j) = (plus.p.y() - minus.p.y()) / (2.0 * h);
                jac(2, j) = angle_delta(plus.v, minus.v) / (2.0 * h);
            }
        } catch (const BilliardError& e) {
            throw PerturbationLeftDomain(e.what());
        }
        return jac;
    };

    const Matrix3 coarse = central(eps);
    const Matrix3 fine = central(0.5 * eps);
    return (4.0 * fine - coarse) / 3.0;
}

LyapunovResult lyapunov_exponent(const Shape& shape, const PhasePoint& start, std::size_t n) {
    Eigen::Vector3d u{0.540302, 0.841471, 0.0};
    u.normalize();
    PhasePoint cur = start;
    Scalar log_sum = 0.0;
    LyapunovResult result;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix3 jac;
        PhasePoint next{};
        try {
            jac = finite_diff_jacobian(shape, cur);
            next = step(shape, cur).output;
        } catch (const BilliardError&) {
            result.lambda = i == 0 ? 0.0 : log_sum / static_cast<Scalar>(i);
            result.steps = i;
            result.complete = false;
            return result;
        }
        u = jac * u;
        const Scalar growth = u.norm();
        log_sum += std::log(growth);
        u /= growth;
        cur = next;
    }
    result.lambda = n == 0 ? 0.0 : log_sum / static_cast<Scalar>(n);
    result.steps = n;
    result.complete = true;
    return result;
}

std::array<std::complex<Scalar>, 3> cubic_eigenvalues(const Matrix3& m) {
    using Complex = std::complex<Scalar>;
    // char(x) = x^3 - c2 x^2 + c1 x - c0
    const Scalar c2 = m.trace();
    const Scalar c1 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                      m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const Scalar c0 = m.determinant();

    // depress: x = mu + c2/3
    const Scalar shift = c2 / 3.0;
    const Scalar p = c1 - c2 * c2 / 3.0;
    const Scalar q = shift * shift * shift - c2 * shift * shift + c1 * shift - c0;

    std::array<Complex, 3> roots;
    const Scalar discr = 0.25 * q * q + p * p * p / 27.0;
    if (discr > 0.0) {
        const Scalar sq = std::sqrt(discr);
        const Scalar uu = std::cbrt(-0.5 * q + sq);
        const Scalar vv = std::cbrt(-0.5 * q - sq);
        roots[0] = Complex{uu + vv, 0.0};
        roots[1] = Complex{-0.5 * (uu + vv), 0.5 * std::sqrt(3.0) * (uu - vv)};
        roots[2] = std::conj(roots[1]);
    } else if (p == 0.0) {
        roots.fill(Complex{0.0, 0.0}); // triple root of the depressed cubic
    } else {
        const Scalar r = std::sqrt(-p / 3.0);
        const Scalar arg = std::clamp(3.0 * q / (2.0 * p * r), -1.0, 1.0);
        const Scalar base = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots[k] = Complex{2.0 * r * std::cos(base - kTwoPi * k / 3.0), 0.0};
    }

    auto poly = [&](Complex x) { return ((x - c2) * x + c1) * x - c0; };
    auto dpoly = [&](Complex x) { return (3.0 * x - 2.0 * c2) * x + c1; };
    for (auto& root : roots) {
        root += shift;
        const Complex d = dpoly(root);
        if (std::abs(d) > 1e-30) root -= poly(root) / d;
    }
    std::sort(roots.begin(), roots.end(),
              [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
    return roots;
}

std::optional<PeriodicOrbitReport> detect_periodic(const Shape& shape, const PhasePoint& seed,
                                                   std::size_t max_period, Scalar tol) {
    auto iterate = [&](PhasePoint z, std::size_t q) {
        for (std::size_t i = 0; i < q; ++i) z = step(shape, z).output;
        return z;
    };

    std::size_t period = 0;
    try {
        PhasePoint z = seed;
        for (std::size_t q = 1; q <= max_period; ++q) {
            z = step(shape, z).output;
            if (phase_distance(z, seed) < tol) {
                period = q;
                break;
            }
        }
    } catch (const BilliardError&) {
        return std::nullopt;
    }
    if (period == 0) return std::nullopt;

    // Damped fixed-point polish on F^q; Newton is ill-conditioned here since
    // a unit eigenvalue is expected on polygons.
    PhasePoint best = seed;
    Scalar best_res = std::numeric_limits<Scalar>::infinity();
    PhasePoint z = seed;
    try {
        for (int round = 0; round < 100; ++round) {
            const PhasePoint image = iterate(z, period);
            const Scalar res = phase_distance(image, z);
            if (res < best_res) {
                best_res = res;
                best = z;
            }
            if (res < 1e-12) break;
            z.p += 0.5 * (image.p - z.p);
            z.v = Angle{z.v.radians() + 0.5 * angle_delta(image.v, z.v)};
        }
    } catch (const BilliardError&) {
        // keep the best point reached so far
    }
    if (!(best_res < tol)) return std::nullopt;

    PeriodicOrbitReport report;
    report.period = period;
    report.closure_error = best_res;
    report.points.reserve(period);
    Matrix3 monodromy = Matrix3::Identity();
    try {
        PhasePoint point = best;
        for (std::size_t i = 0; i < period; ++i) {
            report.points.push_back(point);
            monodromy = finite_diff_jacobian(shape, point) * monodromy;
            point = step(shape, point).output;
        }
    } catch (const BilliardError&) {
        return std::nullopt;
    }
    report.monodromy = monodromy;
    report.eigenvalues = cubic_eigenvalues(monodromy);
    return report;
}

} // namespace bob
