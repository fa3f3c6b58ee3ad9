import math

import numpy as np
import pytest

import hairweave as hw


def brute_chamfer(a, b):
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    return 0.5 * (d.min(axis=1).mean() + d.min(axis=0).mean())


def test_synth_is_deterministic():
    s1, uv1 = hw.synth_hairstyle("wavy", 50, 3, 20)
    s2, uv2 = hw.synth_hairstyle("wavy", 50, 3, 20)
    assert s1.shape == (50, 20, 3) and uv1.shape == (50, 2)
    assert np.array_equal(s1, s2) and np.array_equal(uv1, uv2)


def test_codec_full_rank_round_trip():
    strands, _ = hw.synth_hairstyle("curly", 40, 1, 10)
    basis = hw.fit_basis(strands, 30)
    assert basis.latent_dim == 30
    back = basis.decode(basis.encode(strands))
    assert np.abs(back - strands).max() < 1e-9


def test_chamfer_and_iou_against_numpy():
    rng = np.random.default_rng(5)
    a = rng.uniform(-0.1, 0.1, (120, 3))
    b = rng.uniform(-0.1, 0.1, (90, 3))
    assert hw.chamfer(a, b) == pytest.approx(brute_chamfer(a, b), abs=1e-12)
    assert hw.iou(a, a) == 1.0
    assert hw.iou(a, a + 5.0) == 0.0
    with pytest.raises(hw.DataError):
        hw.chamfer(np.zeros((0, 3)), b)


def test_schedule_and_sampler():
    abar = hw.alpha_bars()
    s = 0.008
    f = lambda t: math.cos((t / 1000 + s) / (1 + s) * math.pi / 2) ** 2
    assert abar[500] == pytest.approx(f(500) / f(0), abs=1e-12)
    assert hw.ddim_timesteps(1000, 50)[:2] == [1000, 980]
    mu = np.linspace(-0.75, 0.75, 16)
    x = hw.sample_gaussian(mu, 0.5, seed=2)
    assert np.array_equal(x, hw.sample_gaussian(mu, 0.5, seed=2))
    known = np.full(16, 3.0)
    assert np.array_equal(hw.inpaint_gaussian(mu, 0.5, known, [1] * 16, seed=2), known)


def test_braid_offsets_cancel():
    guide = np.stack([np.zeros(200), -0.005 * np.arange(200), np.zeros(200)], axis=1)
    centers, members, groups = hw.synth_braid(guide, seed=1, params={"strands_per_group": 4})
    assert centers.shape == (3, 200, 3)
    assert members.shape == (12, 200, 3) and len(groups) == 12
    assert np.abs(centers.sum(axis=0) / 3 - guide).max() < 1e-12
    with pytest.raises(hw.Error):
        hw.synth_braid(guide, params={"num_groups": 0})


def test_render_and_smoothing():
    strands, _ = hw.synth_hairstyle("straight", 30, 0, 20)
    image = hw.render_lineart(strands, width=128, height=96)
    assert image.shape == (96, 128) and image.dtype == np.uint8
    assert image.sum() > 0
    smooth = hw.laplacian_smooth(strands, 0.5, 3)
    assert np.array_equal(smooth[:, 0], strands[:, 0])
    assert np.array_equal(smooth[:, -1], strands[:, -1])


def test_cli_pipeline(tmp_path):
    h = tmp_path / "h.hstr"
    hw.cli.synth_hairstyle("wavy", 200, 4, 20, h)
    hw.cli.fit_basis(h, 16, tmp_path / "b.hpca")
    hw.cli.encode(h, tmp_path / "b.hpca", tmp_path / "h.hlat", 128)
    hw.cli.decode(tmp_path / "h.hlat", tmp_path / "b.hpca", tmp_path / "back.hstr", h)
    assert hw.cli.read_strands(tmp_path / "back.hstr").shape == (200, 20, 3)
    kept, braid_count = hw.cli.braid(
        h, tmp_path / "b.hpca", [0, 1, 2], tmp_path / "braided.hstr",
        {"codec.native_size": "128", "braid.strands_per_group": "4", "sampler.steps": "10"},
    )
    assert braid_count == 12 and len(kept) <= 197
    report = hw.cli.metrics(h, h)
    assert report == {"chamfer_m": 0.0, "iou": 1.0}
    with pytest.raises(hw.DataError):
        hw.cli.fit_basis(tmp_path / "missing.hstr", 4, tmp_path / "x.hpca")
