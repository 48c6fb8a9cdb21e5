// Copyright 2026 The ecrkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <json.hpp>
#include <string>

#include "ecrkit/linalg.hpp"

namespace ecrkit {

// Units: angular frequency with ħ = 1 throughout.

/// Two coupled transmons (Duffing oscillators), the control driven by a
/// microwave tone. Transmon 0 is the control and the first tensor factor.
struct TransmonParams {
  std::array<double, 2> eps = {0, 0};        // qubit frequencies
  std::array<double, 2> delta_res = {0, 0};  // anharmonicities
  double lambda = 0;                         // exchange coupling
  double drive_amp = 0;                      // E0
  double drive_freq = 0;
  double drive_phase = 0;
  int levels = 2;                            // per-transmon truncation, >= 2
};

/// Effective Pauli coefficients of the driven two-qubit Hamiltonian.
struct PauliCoeffs {
  double l_ix = 0;
  double l_zi = 0;
  double l_iz = 0;
  double l_zz = 0;
  double l_zx = 0;

  bool all_zero() const {
    return l_ix == 0 && l_zi == 0 && l_iz == 0 && l_zz == 0 && l_zx == 0;
  }
};

/// Pauli amplitudes of the echoed unitary, Û = z_ii·II + z_iz·IZ + z_iy·IY +
/// z_zx·ZX, together with the two segment rotation rates.
struct EchoCoeffs {
  cplx z_ii, z_iz, z_iy, z_zx;
  double zeta = 0;
  double xi = 0;
};

/// Truncated lowering operator on d levels.
inline CMat lowering_operator(int d) {
  CMat a = CMat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// Instantaneous device Hamiltonian
///   H = Σ_j [ε_j n_j + (δ_j/2) n_j(n_j - 1)]
///     + E0 cos(ω t + φ)(a0† + a0) + λ(a0†a1 + a0 a1†)
/// on the d²-dimensional two-transmon space.
inline CMat build_device_hamiltonian(const TransmonParams& p, double time) {
  if (p.levels < 2) throw Error("build_device_hamiltonian: levels must be >= 2");
  const int d = p.levels;
  const CMat a = lowering_operator(d);
  const CMat n = a.adjoint() * a;
  const CMat id = CMat::Identity(d, d);

  auto duffing = [&](int j) {
    return CMat(p.eps[static_cast<std::size_t>(j)] * n +
                0.5 * p.delta_res[static_cast<std::size_t>(j)] * n * (n - id));
  };
  CMat h = kron(duffing(0), id) + kron(id, duffing(1));
  const double drive = p.drive_amp * std::cos(p.drive_freq * time + p.drive_phase);
  h += drive * kron(CMat(a.adjoint() + a), id);
  h += p.lambda * (kron(a.adjoint(), CMat(a)) + kron(a, CMat(a.adjoint())));
  return h;
}

/// Static ZZ strength of the undriven Hamiltonian: diagonalise at E0 = 0,
/// label dressed eigenstates by maximal overlap with the bare computational
/// states, and return E11 - E10 - E01 + E00. Throws AmbiguousDressing when
/// any squared overlap drops below 0.7 (qubit labels physically dubious).
inline double static_zz(const TransmonParams& p) {
  if (p.lambda == 0.0) return 0.0;  // exact product eigenstates
  TransmonParams undriven = p;
  undriven.drive_amp = 0.0;
  const CMat h = build_device_hamiltonian(undriven, 0.0);
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const auto& evals = es.eigenvalues();
  const CMat& vecs = es.eigenvectors();

  const int d = p.levels;
  std::array<double, 4> energy{};
  std::array<Eigen::Index, 4> chosen{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Eigen::Index bare = i * d + j;
      Eigen::Index best = 0;
      double best_overlap = -1;
      for (Eigen::Index k = 0; k < evals.size(); ++k) {
        const double w = std::norm(vecs(bare, k));
        if (w > best_overlap) {
          best_overlap = w;
          best = k;
        }
      }
      if (best_overlap < 0.7)
        throw AmbiguousDressing("static_zz: bare |" + std::to_string(i) +
                                std::to_string(j) + "> overlaps dressed state by only " +
                                std::to_string(best_overlap));
      const std::size_t slot = static_cast<std::size_t>(i * 2 + j);
      energy[slot] = evals(best);
      chosen[slot] = best;
    }
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t r = s + 1; r < 4; ++r)
      if (chosen[s] == chosen[r])
        throw AmbiguousDressing("static_zz: two bare states map to one dressed state");
  return energy[3] - energy[2] - energy[1] + energy[0];
}

/// Effective two-qubit Hamiltonian
///   H = £_IX·IX/2 + £_ZI·ZI/2 + £_IZ·IZ/2 + £_ZZ·ZZ/2 + £_ZX·ZX/2.
/// drive_sign = -1 negates the non-diagonal coefficients (IX and ZX), which
/// are odd in the drive amplitude; diagonal terms are even.
inline CMat effective_hamiltonian(const PauliCoeffs& c, int drive_sign) {
  if (drive_sign != 1 && drive_sign != -1)
    throw Error("effective_hamiltonian: drive_sign must be +1 or -1");
  const double s = static_cast<double>(drive_sign);
  CMat h = CMat::Zero(4, 4);
  h += (s * c.l_ix / 2) * pauli_string_matrix("IX");
  h += (c.l_zi / 2) * pauli_string_matrix("ZI");
  h += (c.l_iz / 2) * pauli_string_matrix("IZ");
  h += (c.l_zz / 2) * pauli_string_matrix("ZZ");
  h += (s * c.l_zx / 2) * pauli_string_matrix("ZX");
  return h;
}

/// e^{-i(angle/2)·ZX} = cos(angle/2)·II - i·sin(angle/2)·ZX.
inline CMat zx_rotation(double angle) {
  return std::cos(angle / 2) * CMat(CMat::Identity(4, 4)) -
         cplx(0, 1) * std::sin(angle / 2) * pauli_string_matrix("ZX");
}

/// Echoed pulse unitary, evaluated exactly as the product
///   Û = XI · e^{-i H(-E0) t} · XI · e^{-i H(E0) t}.
inline CMat echoed_unitary_numeric(const PauliCoeffs& c, double t) {
  if (t < 0) throw Error("echoed_unitary_numeric: negative gate duration");
  const CMat xi_flip = pauli_string_matrix("XI");
  const CMat seg_plus = matrix_exp_hermitian(effective_hamiltonian(c, +1), t);
  const CMat seg_minus = matrix_exp_hermitian(effective_hamiltonian(c, -1), t);
  return xi_flip * seg_minus * xi_flip * seg_plus;
}

namespace detail {

/// sin(x·t/2)/x, continued through x → 0 by its series.
inline double half_sinc(double x, double t) {
  if (std::abs(x) < 1e-8) {
    const double u = x * t / 2;
    return (t / 2) * (1.0 - u * u / 6.0);
  }
  return std::sin(x * t / 2) / x;
}

}  // namespace detail

/// Closed form of the echoed unitary: coefficients of Û in the
/// {II, IZ, IY, ZX} Pauli span. £_ZI does not enter (the echo cancels it).
inline std::pair<EchoCoeffs, CMat> echoed_unitary_analytic(const PauliCoeffs& c,
                                                           double t) {
  if (t < 0) throw Error("echoed_unitary_analytic: negative gate duration");
  const double a = c.l_ix, iz = c.l_iz, zz = c.l_zz, zx = c.l_zx;
  const cplx im(0, 1);

  EchoCoeffs e;
  e.zeta = std::hypot(iz + zz, a + zx);
  e.xi = std::hypot(iz - zz, a - zx);
  const double cos_z = std::cos(e.zeta * t / 2);
  const double cos_x = std::cos(e.xi * t / 2);
  const double hs_z = detail::half_sinc(e.zeta, t);  // sin(ζt/2)/ζ
  const double hs_x = detail::half_sinc(e.xi, t);    // sin(ξt/2)/ξ

  e.z_ii = (a * a - iz * iz - zx * zx + zz * zz) * hs_z * hs_x + cos_z * cos_x;
  e.z_iz = -im * ((iz - zz) * cos_z * hs_x + (iz + zz) * hs_z * cos_x);
  e.z_iy = -2.0 * im * (a * iz - zx * zz) * hs_z * hs_x;
  e.z_zx = im * (a - zx) * cos_z * hs_x - im * (a + zx) * hs_z * cos_x;

  CMat u = e.z_ii * CMat(CMat::Identity(4, 4));
  u += e.z_iz * pauli_string_matrix("IZ");
  u += e.z_iy * pauli_string_matrix("IY");
  u += e.z_zx * pauli_string_matrix("ZX");
  return {e, u};
}

/// Echo quality relative to the ideal ZX(π/2) gate: echo coefficients, the
/// average gate fidelity against zx_rotation(π/2), and the magnitudes of the
/// surviving IZ/IY error terms.
struct GateErrorReport {
  double time = 0;
  EchoCoeffs coeffs;
  double fidelity_zx90 = 0;
  double residual_iz = 0;
  double residual_iy = 0;
};

inline GateErrorReport gate_error_report(const PauliCoeffs& c, double t) {
  const auto [coeffs, u] = echoed_unitary_analytic(c, t);
  GateErrorReport r;
  r.time = t;
  r.coeffs = coeffs;
  r.fidelity_zx90 = avg_gate_fidelity(u, zx_rotation(M_PI / 2));
  r.residual_iz = std::abs(coeffs.z_iz);
  r.residual_iy = std::abs(coeffs.z_iy);
  return r;
}

struct CalibrationResult {
  double t_star = 0;
  double fidelity = 0;
};

/// Maximise the ZX(π/2) fidelity over t ∈ (0, t_max]: 512-point coarse grid,
/// then golden-section refinement around the best point. Deterministic.
inline CalibrationResult calibrate_time(const PauliCoeffs& c, double t_max) {
  if (t_max <= 0) throw Error("calibrate_time: t_max must be positive");
  if (c.all_zero()) throw DegenerateCoeffs("calibrate_time: all coefficients are zero");
  const CMat target = zx_rotation(M_PI / 2);
  auto fid = [&](double t) {
    return avg_gate_fidelity(echoed_unitary_analytic(c, t).second, target);
  };
  constexpr int kGrid = 512;
  int best_i = 1;
  double best_f = -1;
  for (int i = 1; i <= kGrid; ++i) {
    const double f = fid(t_max * i / kGrid);
    if (f > best_f) {
      best_f = f;
      best_i = i;
    }
  }
  double lo = t_max * (best_i - 1) / kGrid;
  double hi = t_max * std::min(best_i + 1, kGrid) / kGrid;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = fid(x1);
  double f2 = fid(x2);
  for (int iter = 0; iter < 90 && hi - lo > 1e-13 * t_max; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = fid(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = fid(x1);
    }
  }
  const double t_star = (lo + hi) / 2;
  return {t_star, fid(t_star)};
}

// --- JSON interfaces ---------------------------------------------------------

namespace detail {

inline void require_exact_fields(const nlohmann::json& j,
                                 const std::vector<std::string>& fields,
                                 const std::string& what) {
  if (!j.is_object()) throw Error(what + ": expected a JSON object");
  for (const std::string& f : fields)
    if (!j.contains(f)) throw Error(what + ": missing field '" + f + "'");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const std::string& f : fields) known = known || f == key;
    if (!known) throw Error(what + ": unknown field '" + key + "'");
  }
}

}  // namespace detail

inline PauliCoeffs pauli_coeffs_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("coefficient file: ") + e.what());
  }
  detail::require_exact_fields(j, {"l_ix", "l_zi", "l_iz", "l_zz", "l_zx"},
                               "coefficient file");
  PauliCoeffs c;
  try {
    c.l_ix = j.at("l_ix").get<double>();
    c.l_zi = j.at("l_zi").get<double>();
    c.l_iz = j.at("l_iz").get<double>();
    c.l_zz = j.at("l_zz").get<double>();
    c.l_zx = j.at("l_zx").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("coefficient file: ") + e.what());
  }
  return c;
}

inline TransmonParams transmon_params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("device file: ") + e.what());
  }
  detail::require_exact_fields(
      j, {"eps", "delta_res", "lambda", "drive_amp", "drive_freq", "drive_phase", "levels"},
      "device file");
  TransmonParams p;
  try {
    const auto eps = j.at("eps").get<std::vector<double>>();
    const auto delta = j.at("delta_res").get<std::vector<double>>();
    if (eps.size() != 2 || delta.size() != 2)
      throw Error("device file: eps and delta_res must have two entries");
    p.eps = {eps[0], eps[1]};
    p.delta_res = {delta[0], delta[1]};
    p.lambda = j.at("lambda").get<double>();
    p.drive_amp = j.at("drive_amp").get<double>();
    p.drive_freq = j.at("drive_freq").get<double>();
    p.drive_phase = j.at("drive_phase").get<double>();
    p.levels = j.at("levels").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("device file: ") + e.what());
  }
  if (p.levels < 2) throw Error("device file: levels must be >= 2");
  return p;
}

namespace detail {

inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);  // flushes negative zero
  return buf;
}

inline std::string fmt_cplx(cplx v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", v.real() + 0.0, v.imag() + 0.0);
  return buf;
}

}  // namespace detail

inline std::string render_report_text(const GateErrorReport& r) {
  std::string out;
  auto row = [&out](const std::string& label, const std::string& value) {
    out += label;
    out.append(label.size() < 14 ? 14 - label.size() : 1, ' ');
    out += value + "\n";
  };
  row("time", detail::fmt_g(r.time));
  row("zeta", detail::fmt_g(r.coeffs.zeta));
  row("xi", detail::fmt_g(r.coeffs.xi));
  row("z_ii", detail::fmt_cplx(r.coeffs.z_ii));
  row("z_iz", detail::fmt_cplx(r.coeffs.z_iz));
  row("z_iy", detail::fmt_cplx(r.coeffs.z_iy));
  row("z_zx", detail::fmt_cplx(r.coeffs.z_zx));
  row("fidelity_zx90", detail::fmt_g(r.fidelity_zx90));
  row("residual_iz", detail::fmt_g(r.residual_iz));
  row("residual_iy", detail::fmt_g(r.residual_iy));
  return out;
}

inline nlohmann::json report_to_json(const GateErrorReport& r) {
  nlohmann::json j;
  j["time"] = r.time;
  j["zeta"] = r.coeffs.zeta;
  j["xi"] = r.coeffs.xi;
  j["z_ii"] = {r.coeffs.z_ii.real(), r.coeffs.z_ii.imag()};
  j["z_iz"] = {r.coeffs.z_iz.real(), r.coeffs.z_iz.imag()};
  j["z_iy"] = {r.coeffs.z_iy.real(), r.coeffs.z_iy.imag()};
  j["z_zx"] = {r.coeffs.z_zx.real(), r.coeffs.z_zx.imag()};
  j["fidelity_zx90"] = r.fidelity_zx90;
  j["residual_iz"] = r.residual_iz;
  j["residual_iy"] = r.residual_iy;
  return j;
}

}  // namespace ecrkit
