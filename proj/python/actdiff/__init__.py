"""Generative diffusion with exponentially correlated (active) noise."""

from ._core import (
    DiffusionParams,
    GaussianMixture,
    InvalidInputError,
    KernelMoments,
    NumericalError,
    active_joint_log_density,
    active_joint_score,
    convolution_metric,
    diamond_mixture,
    energy_distance,
    forward_kernel_sample,
    fourier_decay_rates,
    ising_mcmc,
    kernel_moments,
    marginal_moments_x0,
    mixture_recovery,
    passive_log_density,
    passive_score,
    prior_sample,
    sample_probability_flow,
    sample_reverse_sde,
    speciation_times,
    stationary_moments,
    swiss_roll,
)

__all__ = [
    "DiffusionParams",
    "GaussianMixture",
    "InvalidInputError",
    "KernelMoments",
    "NumericalError",
    "active_joint_log_density",
    "active_joint_score",
    "convolution_metric",
    "diamond_mixture",
    "energy_distance",
    "forward_kernel_sample",
    "fourier_decay_rates",
    "ising_mcmc",
    "kernel_moments",
    "marginal_moments_x0",
    "mixture_recovery",
    "passive_log_density",
    "passive_score",
    "prior_sample",
    "sample_probability_flow",
    "sample_reverse_sde",
    "speciation_times",
    "stationary_moments",
    "swiss_roll",
]
