#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "sfem/errors.hpp"
#include "sfem/vec3.hpp"

namespace sfem {

/// Coefficient closures of the nonlinear elliptic problem
///   -div( b(x,u,grad u) grad u ) + q(x,u) = f on the surface, u = g on the
/// boundary, together with the growth/ellipticity constants they satisfy.
struct ProblemSpec {
    std::string name = "custom";
    std::function<double(const Vec3&, double, const Vec3&)> b;
    std::function<double(const Vec3&, double)> q;
    std::function<double(const Vec3&)> f;
    std::function<double(const Vec3&)> g;

    double p = 2.0;
    double p1 = 2.0;
    double mu0 = 1.0, mu1 = 1.0, M0 = 1.0, M1 = 1.0;
    double alpha = 0.0, beta = 0.0;
    double epsilon_reg = 0.0;
};

/// r(x,z) = (q(x,z) - q(x,0)) / z for z > 0, else 0. Nonnegative by the
/// growth condition on q.
inline double r_of(const ProblemSpec& problem, const Vec3& x, double z) {
    if (z <= 0.0) return 0.0;
    return (problem.q(x, z) - problem.q(x, 0.0)) / z;
}

struct CatalogParams {
    double sigma = 1.0;   // radiative cooling radiation constant
    double p = 4.0;       // p-Laplacian exponent
    double eps_reg = 1e-8;
    std::function<double(double)> rho; // gas dynamics density law, of |grad u|^2
    std::function<double(const Vec3&)> g; // override for the Dirichlet datum
};

inline ProblemSpec catalog(const std::string& name, const CatalogParams& params = {}) {
    ProblemSpec spec;
    spec.name = name;
    if (name == "radiative-cooling") {
        const double sigma = params.sigma;
        spec.b = [](const Vec3&, double, const Vec3&) { return 1.0; };
        spec.q = [sigma](const Vec3&, double z) {
            const double zp = std::max(z, 0.0);
            return sigma * zp * zp * zp * zp;
        };
        spec.f = [](const Vec3&) { return 0.0; };
        spec.g = params.g ? params.g : [](const Vec3& x) { return 1.0 + x.x * x.y; };
        spec.p = 2.0;
        spec.p1 = 5.0;
        spec.mu0 = spec.mu1 = spec.M0 = spec.M1 = 1.0;
        spec.alpha = 0.0;
        spec.beta = sigma;
    } else if (name == "p-laplacian") {
        const double p = params.p;
        const double eps = params.eps_reg;
        if (p < 2.0) throw ParameterError("p-laplacian: need p >= 2");
        spec.b = [p, eps](const Vec3&, double, const Vec3& xi) {
            return eps + std::pow(norm(xi), p - 2.0);
        };
        spec.q = [](const Vec3&, double) { return 0.0; };
        spec.f = [](const Vec3&) { return 0.0; };
        spec.g = params.g ? params.g : [](const Vec3& x) { return 10.0 + x.x; };
        spec.p = p;
        spec.p1 = 2.0;
        spec.mu0 = eps;
        spec.mu1 = 1.0;
        spec.M0 = std::max(eps, 1e-300);
        spec.M1 = 1.0;
        spec.epsilon_reg = eps;
    } else if (name == "gas-dynamics") {
        if (!params.rho) throw ParameterError("gas-dynamics: a density law rho is required");
        auto rho = params.rho;
        spec.b = [rho](const Vec3&, double, const Vec3& xi) { return rho(dot(xi, xi)); };
        spec.q = [](const Vec3&, double) { return 0.0; };
        spec.f = [](const Vec3&) { return 0.0; };
        spec.g = params.g ? params.g : [](const Vec3&) { return 1.0; };
        spec.p = 2.0;
        spec.p1 = 2.0;
    } else if (name == "custom") {
        // caller fills the closures
    } else {
        throw ParameterError("unknown catalog problem: " + name);
    }
    return spec;
}

} // namespace sfem
