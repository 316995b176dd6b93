#pragma once

// Brute-force cross-checks of the jet path: finite differences of sampled
// values, determinants of sampled partials, and the generic ruled-surface
// striction formula.

#include "gluing/developables.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gluing::oracle {

enum class Scheme { Central2, Central4 };

struct FdConfig
{
    /// First-derivative step; order k uses step^(1/k).
    double step = 1e-5;
    Scheme scheme = Scheme::Central4;
    bool richardson = true;
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<std::vector<double>(double)>;

double fd_derivative(const ScalarFn& f, double t, int order, const FdConfig& cfg = {});
std::vector<double> fd_derivative(const VectorFn& f, double t, int order, const FdConfig& cfg = {});

/// det(S_t, S_a, normal) with FD partials of the sampled surface.
double lambda_direct(const DevelopableSurface& s, double t, double a, const FdConfig& cfg = {});

/// Root of lambda_direct in a on [a_lo, a_hi] (which must bracket it).
double lambda_zero(const DevelopableSurface& s, double t, double a_lo, double a_hi, const FdConfig& cfg = {});

/// s = -(c'.delta') / (delta'.delta') with FD derivatives of gamma and the
/// ruling. CylindricalAt when delta' vanishes.
double striction_search(const DevelopableSurface& s, double t, const FdConfig& cfg = {});

/// Gaussian curvature from FD first and second fundamental forms.
double gaussian_curvature_fd(const DevelopableSurface& s, double t, double a, const FdConfig& cfg = {});

/// rho' of a Nu-kind surface where k1 = 0 and l = 0: beta (k2 k3 + 3 k1') l'.
double rho_prime_kappa1_zero_l_zero(const FrameInvariants& k);
/// rho' of a Nu-kind surface where k1 = 0, l != 0 and k2 k3 + 2 k1' = 0:
/// (k2 k3^2 / 4)(k3 (4 l k2' - k2 l') + 6 l (k2 k3' + k1'')).
double rho_prime_kappa1_zero(const FrameInvariants& k);
/// eta eta lambda in the same two cases.
double eta_eta_lambda_kappa1_zero_l_zero(const FrameInvariants& k);
double eta_eta_lambda_kappa1_zero(const FrameInvariants& k);

struct Comparison
{
    std::string fixture;
    std::string quantity;
    double t = 0.0;
    double jet_value = 0.0;
    double oracle_value = 0.0;
    /// |jet - oracle| / max(|oracle|, abs_floor / rel_tol)
    double rel_err = 0.0;
};

inline constexpr double kRelTolerance = 1e-5;
inline constexpr double kAbsFloor = 1e-7;

Comparison compare(std::string fixture, std::string quantity, double t, double jet_value, double oracle_value,
                   double rel_tol = kRelTolerance, double abs_floor = kAbsFloor);

/// OracleMismatch with both values and t when rel_err exceeds `rel_tol`.
void require(const Comparison& c, double rel_tol = kRelTolerance);

/// Jet derivatives 1..3 of l, kappa1..3 and, where defined, beta and rho of
/// both ruling kinds, against FD of the corresponding order-0 values.
std::vector<Comparison> derivative_checks(const std::string& fixture, const FramedCurve& fc,
                                          const std::vector<double>& ts, const FdConfig& cfg = {});

void write_csv(std::ostream& os, const std::vector<Comparison>& rows);

} // namespace gluing::oracle
