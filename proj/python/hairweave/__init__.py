"""Python bindings for the hairweave strand toolkit."""

from ._core import (
    DataError,
    Error,
    NumericError,
    PcaBasis,
    UsageError,
    alpha_bars,
    chamfer,
    cli,
    ddim_timesteps,
    fit_basis,
    inpaint_gaussian,
    iou,
    laplacian_smooth,
    load_basis,
    render_lineart,
    sample_gaussian,
    synth_braid,
    synth_hairstyle,
)

__all__ = [
    "DataError",
    "Error",
    "NumericError",
    "PcaBasis",
    "UsageError",
    "alpha_bars",
    "chamfer",
    "cli",
    "ddim_timesteps",
    "fit_basis",
    "inpaint_gaussian",
    "iou",
    "laplacian_smooth",
    "load_basis",
    "render_lineart",
    "sample_gaussian",
    "synth_braid",
    "synth_hairstyle",
]
