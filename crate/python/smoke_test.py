"""Smoke test for the vacnoise_py extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

import math

import vacnoise_py as vn


def close(a, b, tol):
    return abs(a - b) <= tol * max(abs(a), abs(b))


def main():
    assert vn.zeta_exact(4, "maxwell") == ("1/(80π²)", "0")
    assert vn.zeta_exact(2, "scalar") == ("1/(24π)", "0")
    z0, z1 = vn.zeta(4, "scalar")
    assert close(z0, 1 / (960 * math.pi**2), 1e-15) and close(z1, 10 * z0, 1e-15)

    scales = vn.PhysicalScales(planck_length=0.5)
    assert close(scales.planck_length, 0.5, 1e-15)
    content = vn.FieldContent.standard(4, 3)
    assert content.stochastic_identities_hold(scales)

    probe = vn.ProbeConfig(v=0.0, tau=1.0)
    omegas = [0.5, 1.0, 2.0]
    gw = vn.deviation_spectrum(probe, content, scales, omegas, "gw-only")
    gov = vn.deviation_spectrum(probe, content, scales, omegas, "gravity-of-vacuum")
    for i, w in enumerate(omegas):
        s2 = math.sin(w / 2) ** 2
        assert close(gw["C_d33"][i], 32 / 15 * w**3 * 0.25 * s2, 5e-3)
        assert close(gw["C_d13"][i] / gw["C_d33"][i], 0.75, 5e-3)
        assert close(gov["C_trace"][i], 8 * 7 / (105 * math.pi) * w**5 * 0.0625 * s2, 1e-2)

    moving = vn.ProbeConfig(v=0.4, tau=1.0)
    closed = vn.tidal_spectra(1.3, 1.0, 0.4, moving, 0.7, 0.2)
    oracle = vn.tidal_spectra_oracle(1.3, 1.0, 0.4, moving, 0.7, 0.2, 256)
    scale = max(abs(x) for x in closed.values())
    assert all(abs(closed[k] - oracle[k]) <= 1e-12 * scale for k in closed)

    assert vn.eddington_gamma(0.0) == 1.0
    assert close(vn.eddington_gamma(0.3), 1.1 / 0.9, 1e-15)
    try:
        vn.eddington_gamma(3.0)
    except ArithmeticError:
        pass
    else:
        raise AssertionError("delta_gamma1 = 3 should raise")
    h00, hii = vn.ModifiedGravity(1.0, 0.3).point_mass_metric(1.0, [0.0, 0.0, 1.0])
    assert close(hii / h00, 1.1 / 0.9, 1e-14)

    try:
        vn.ProbeConfig(v=1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("v > 1 should raise")

    print(f"vacnoise_py {vn.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
