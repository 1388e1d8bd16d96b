#pragma once

// Dimensionless parameter model shared by every trapping case.
//
// All frequencies are measured in units of the excited-state linewidth
// (Gamma = 1), hbar = 1, and momenta are expressed in units of the
// ground-trap zero-point spread, so the atomic mass never appears.

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trapscatter {

enum class PotentialKind { EqualTrap, FreeExcited, AntiTrapped };

/// Motional potential seen by the electronic excited state.
struct ExcitedPotential {
  PotentialKind kind = PotentialKind::EqualTrap;
  /// Inverted-oscillator frequency over Gamma; meaningful for AntiTrapped only.
  double inv_ratio = 0.0;

  static ExcitedPotential equal_trap() { return {PotentialKind::EqualTrap, 0.0}; }
  static ExcitedPotential free() { return {PotentialKind::FreeExcited, 0.0}; }
  static ExcitedPotential anti_trapped(double inv_ratio) {
    return {PotentialKind::AntiTrapped, inv_ratio};
  }

  friend bool operator==(const ExcitedPotential&, const ExcitedPotential&) = default;
};

inline const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::EqualTrap: return "equal";
    case PotentialKind::FreeExcited: return "free";
    case PotentialKind::AntiTrapped: return "anti";
  }
  return "unknown";
}

struct Params {
  double trap_ratio = 1.0;  ///< ground-trap frequency / Gamma
  double detuning = 0.0;    ///< laser detuning / Gamma
  double drive = 0.01;      ///< Rabi frequency / Gamma
  double eta = 0.0;         ///< Lamb-Dicke parameter
  ExcitedPotential potential{};
};

/// Drive strengths above this are accepted but flagged: the quasi-steady
/// state assumes the scattering rate stays far below Gamma.
inline constexpr double kWeakDriveLimit = 0.1;

/// Non-fatal note that a parameter lies outside the weak-drive/early-time
/// regime the rates are derived for.
struct RegimeWarning {
  std::string field;
  double value = 0.0;
  double limit = 0.0;
  std::string message;
};

/// Throws std::invalid_argument on hard violations; returns soft warnings.
inline std::vector<RegimeWarning> validate(const Params& p) {
  auto fail = [](const std::string& what, double v) {
    std::ostringstream os;
    os << what << " (got " << v << ")";
    throw std::invalid_argument(os.str());
  };
  if (!(p.trap_ratio > 0.0) || !std::isfinite(p.trap_ratio)) fail("trap_ratio must be positive", p.trap_ratio);
  if (!(p.drive > 0.0) || !std::isfinite(p.drive)) fail("drive must be positive", p.drive);
  if (!(p.eta >= 0.0) || !std::isfinite(p.eta)) fail("eta must be nonnegative", p.eta);
  if (!std::isfinite(p.detuning)) fail("detuning must be finite", p.detuning);
  if (p.potential.kind == PotentialKind::AntiTrapped &&
      (!(p.potential.inv_ratio >= 0.0) || !std::isfinite(p.potential.inv_ratio)))
    fail("inv_ratio must be nonnegative", p.potential.inv_ratio);

  std::vector<RegimeWarning> warnings;
  if (p.drive > kWeakDriveLimit) {
    warnings.push_back({"drive", p.drive, kWeakDriveLimit,
                        "drive exceeds the weak-driving limit; quasi-steady rates may not apply"});
  }
  return warnings;
}

inline bool in_weak_drive_regime(const Params& p) { return p.drive <= kWeakDriveLimit; }

/// Resonant scattering rate of a motionless atom, Omega^2 / Gamma.
inline double r_ideal(const Params& p) { return p.drive * p.drive; }

/// Lorentzian static-atom rate as a fraction of r_ideal.
inline double static_rate(double detuning) { return 1.0 / (4.0 * detuning * detuning + 1.0); }

/// Total and elastic scattering rates, both as fractions of r_ideal.
struct RateResult {
  double total = 0.0;
  double elastic = 0.0;
};

inline void require_potential(const Params& p, PotentialKind kind, const char* where) {
  if (p.potential.kind != kind) {
    throw std::invalid_argument(std::string(where) + ": expected excited potential '" +
                                to_string(kind) + "', got '" + to_string(p.potential.kind) + "'");
  }
}

}  // namespace trapscatter
