"""Downlink wireless power transfer accounting.

Each AP beamforms independent energy symbols with the conjugated
channel estimates (no inter-AP phase synchronization), so the average
energy harvested by a UE is a linear function of the power coefficients
p_il.  The closed form has a matched-filter part, tr(Rhat_il R_kl), and
pilot-contamination cross terms that only co-pilot users contribute.
Energy is accounted in W*samples; only energy ratios matter downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import sample_realization, sample_pilot_observation
from .estimation import lmmse_estimate


@dataclass(frozen=True)
class PowerAllocation:
    """Decision variables: AP energy coefficients and UE uplink powers."""

    p: np.ndarray     # (K, L), p[k, l] >= 0
    eta: np.ndarray   # (K,) uplink powers, >= 0


@dataclass(frozen=True)
class EnergyReport:
    ap_power: np.ndarray   # (L,) average transmit power, W
    harvested: np.ndarray  # (K,) average harvested energy, W*samples


def ap_transmit_power(p, cache, l):
    """Average transmit power of AP l: sum_k p_kl tr(Rhat_kl)."""
    return float(np.asarray(p)[:, l] @ cache.tr_rhat[:, l])


def ap_transmit_powers(p, cache):
    """All L AP powers at once."""
    return np.einsum("kl,kl->l", np.asarray(p, dtype=float), cache.tr_rhat)


def _energy_coefficient_terms(k, cache, stats, plan, cfg):
    """The three non-negative pieces of dE_k/dp_il, each shaped (K, L).

    base:   matched-filter energy tr(Rhat_il R_kl), all transmitters.
    cross:  2 beta_kl Re{gbar_kl^H Psi_il^-1 R_il gbar_kl} tr(Psi_il^-1 R_il),
            co-pilot transmitters only (their beams align with UE k's
            pilot direction).
    square: beta_kl^2 tr(Psi_il^-1 R_il)^2, co-pilot only.

    The mu tau_d and (rho_p tau_p)^2 prefactors are applied by the caller.
    """
    base = np.einsum("ilab,lba->il", cache.Rhat, cache.R[k]).real

    tr_m = np.einsum("ilaa->il", cache.psi_inv_r).real
    quad = np.einsum("la,ilab,lb->il",
                     stats.gbar[k].conj(), cache.psi_inv_r, stats.gbar[k])
    copilot = np.asarray(plan.pilot_of == plan.pilot_of[k], dtype=float)[:, None]

    cross = 2.0 * stats.beta[k][None, :] * tr_m * quad.real * copilot
    square = (stats.beta[k][None, :] ** 2) * tr_m ** 2 * copilot
    return base, cross, square


def harvested_energy_coefficients(k, cache, stats, plan, cfg):
    """Gradient of E_k with respect to p, shaped (K, L).

    E_k is linear in the power coefficients, so this matrix both
    evaluates the closed form (as a dot product with p) and supplies
    the rows of the energy constraints in the max-min LP.
    """
    base, cross, square = _energy_coefficient_terms(k, cache, stats, plan, cfg)
    mu_tau = cfg.mu * cfg.tau_d
    rho_tau_sq = (cfg.rho_p * cfg.tau_p) ** 2
    return mu_tau * (base + rho_tau_sq * (cross + square))


def harvested_energy(k, p, cache, stats, plan, cfg):
    """Closed-form average energy harvested by UE k, in W*samples."""
    coeff = harvested_energy_coefficients(k, cache, stats, plan, cfg)
    return float(np.sum(np.asarray(p, dtype=float) * coeff))


def energy_report(p, cache, stats, plan, cfg):
    harvested = np.array([
        harvested_energy(k, p, cache, stats, plan, cfg) for k in range(cfg.K)
    ])
    return EnergyReport(ap_power=ap_transmit_powers(p, cache), harvested=harvested)


def harvested_energy_oracle(k, p, cache, stats, plan, cfg, mc_samples, rng,
                            batch=20_000):
    """Monte Carlo estimate of UE k's harvested energy.

    Draws joint (channel, pilot observation, energy symbol) realizations
    and averages mu tau_d |sum_il sqrt(p_il) ghat_il^H g_kl s_il|^2.
    Energy symbols are unit-modulus with uniform phase (zero mean, unit
    variance, minimal oracle variance).  Harvester noise is neglected.

    Returns (estimate, standard_error).
    """
    p = np.asarray(p, dtype=float)
    sqrt_p = np.sqrt(p)
    mu_tau = cfg.mu * cfg.tau_d

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < mc_samples:
        n = min(batch, mc_samples - done)
        real = sample_realization(stats, rng, size=n)
        z = sample_pilot_observation(real, stats, cfg, rng)
        ghat = lmmse_estimate(z, cache, cfg)
        s = np.exp(2j * np.pi * rng.uniform(size=(n, cfg.K, cfg.L)))
        # inner[b, i, l] = ghat_il^H g_kl for draw b
        inner = np.einsum("biln,bln->bil", ghat.conj(), real.g[:, k])
        r = np.einsum("bil,il,bil->b", inner, sqrt_p, s)
        y = mu_tau * np.abs(r) ** 2
        total += float(y.sum())
        total_sq += float((y ** 2).sum())
        done += n

    mean = total / mc_samples
    var = max(total_sq / mc_samples - mean ** 2, 0.0)
    return mean, float(np.sqrt(var / mc_samples))
