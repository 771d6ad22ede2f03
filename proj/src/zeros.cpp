#include "dumbbell/zeros.hpp"

#include "dumbbell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dumbbell {

void ZeroSearchDomain::validate() const
{
    if (!(r1 > 0.0)) throw std::invalid_argument("annulus inner radius r1 must be positive");
    if (!(r2 > r1)) throw std::invalid_argument("annulus requires r1 < r2");
    if (n_radii < 1 || n_angles < 1) throw std::invalid_argument("seed grid counts must be positive");
}

bool ZeroSearchDomain::contains(const Eigen::Vector2d& alpha) const
{
    const double r = alpha.norm();
    return r >= r1 && r <= r2;
}

std::vector<Eigen::Vector2d> ZeroSearchDomain::seeds() const
{
    validate();
    std::vector<Eigen::Vector2d> out;
    out.reserve(static_cast<std::size_t>(n_radii) * static_cast<std::size_t>(n_angles));
    // Cell centres; the half-step angular offset keeps seeds off the axes.
    for (int i = 0; i < n_radii; ++i) {
        const double r = r1 + (i + 0.5) * (r2 - r1) / n_radii;
        for (int j = 0; j < n_angles; ++j) {
            const double a = (j + 0.5) * 2.0 * std::numbers::pi / n_angles;
            out.emplace_back(r * std::cos(a), r * std::sin(a));
        }
    }
    return out;
}

Eigen::Matrix2d jacobian2d(const Field2D& field, const Eigen::Vector2d& point)
{
    Eigen::Matrix2d j;
    for (int c = 0; c < 2; ++c) {
        const double h = 1e-5 * std::max(1.0, std::abs(point[c]));
        Eigen::Vector2d up = point, dn = point;
        up[c] += h;
        dn[c] -= h;
        j.col(c) = (field(up) - field(dn)) / (2.0 * h);
    }
    return j;
}

namespace {

CertifiedZero certify(const Field2D& field, const Eigen::Vector2d& x, double residual, int iters,
                      const NewtonOptions& options)
{
    CertifiedZero z;
    z.location = x;
    z.residual_norm = residual;
    z.jacobian = jacobian2d(field, x);
    z.jacobian_det = z.jacobian.determinant();
    z.classification = std::abs(z.jacobian_det) > options.simple_det_rel * options.field_scale
        ? CertifiedZero::Kind::simple
        : CertifiedZero::Kind::degenerate;
    z.iterations = iters;
    return z;
}

// Polar angle with components at rounding level treated as zero, so that
// points on an axis sort consistently regardless of the sign of their noise.
double polar_angle(const Eigen::Vector2d& v)
{
    const double scale = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
    const double x = std::abs(v[0]) <= scale ? 0.0 : v[0];
    const double y = std::abs(v[1]) <= scale ? 0.0 : v[1];
    return std::atan2(y, x);
}

} // namespace

CertifiedZero newton2d(const Field2D& field, const Eigen::Vector2d& seed, const NewtonOptions& options)
{
    if (!(options.tol > 0.0)) throw std::invalid_argument("newton tolerance must be positive");

    Eigen::Vector2d x = seed;
    Eigen::Vector2d f = field(x);
    double fn = f.norm();
    if (options.trace) options.trace->push_back(x);

    for (int iter = 0; iter < options.max_iter; ++iter) {
        if (!std::isfinite(fn)) break;
        const Eigen::Matrix2d j = jacobian2d(field, x);
        const double det = j.determinant();
        if (!(std::abs(det) >= options.singular_det))
            throw SingularJacobian("singular Jacobian (det " + std::to_string(det) + ") during Newton iteration");
        const Eigen::Vector2d dx = -j.inverse() * f;

        if (fn < options.tol && dx.norm() < options.step_tol) return certify(field, x, fn, iter, options);

        double lambda = 1.0;
        bool accepted = false;
        Eigen::Vector2d xt, ft;
        for (int h = 0; h <= options.max_halvings; ++h) {
            xt = x + lambda * dx;
            ft = field(xt);
            if (ft.norm() < fn) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted && fn < options.tol) {
            // Residual is at rounding level and cannot decrease further.
            if (dx.norm() < 1e3 * options.step_tol) return certify(field, x, fn, iter, options);
        }
        const double step = (xt - x).norm();
        x = xt;
        f = ft;
        fn = f.norm();
        if (options.trace) options.trace->push_back(x);
        if (fn < options.tol && step < options.step_tol) return certify(field, x, fn, iter + 1, options);
    }
    throw NoConvergence("Newton did not converge from (" + std::to_string(seed[0]) + ", "
                        + std::to_string(seed[1]) + ") in " + std::to_string(options.max_iter)
                        + " iterations");
}

double field_scale(const Field2D& field, const ZeroSearchDomain& domain)
{
    std::vector<double> mags;
    for (const auto& s : domain.seeds()) mags.push_back(field(s).norm());
    if (mags.empty()) return 1.0;
    const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
    std::nth_element(mags.begin(), mid, mags.end());
    return *mid;
}

std::vector<CertifiedZero> multistart_zeros(const Field2D& field, const ZeroSearchDomain& domain,
                                            NewtonOptions options)
{
    domain.validate();
    options.field_scale = field_scale(field, domain);
    options.trace = nullptr;

    std::vector<CertifiedZero> found;
    for (const auto& seed : domain.seeds()) {
        CertifiedZero z;
        try {
            z = newton2d(field, seed, options);
        } catch (const Error&) {
            continue;
        }
        if (!domain.contains(z.location)) continue;
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const CertifiedZero& other) {
            return (other.location - z.location).norm() < 1e-6;
        });
        if (!duplicate) found.push_back(z);
    }

    std::stable_sort(found.begin(), found.end(), [](const CertifiedZero& a, const CertifiedZero& b) {
        const double aa = polar_angle(a.location), ab = polar_angle(b.location);
        if (aa != ab) return aa < ab;
        return a.location.norm() < b.location.norm();
    });
    return found;
}

std::vector<int> orbit_classes(const std::vector<CertifiedZero>& zeros, double tol)
{
    std::vector<int> label(zeros.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const Eigen::Vector2d& a = zeros[i].location;
        for (std::size_t j = 0; j < i; ++j) {
            const Eigen::Vector2d& b = zeros[j].location;
            if (std::abs(a[0] - b[0]) < tol && std::abs(a[1] + b[1]) < tol) {
                label[i] = label[j];
                break;
            }
        }
        if (label[i] < 0) label[i] = next++;
    }
    return label;
}

} // namespace dumbbell
