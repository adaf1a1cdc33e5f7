"""
Locus selector normalization and command-line configuration.

Run with: pytest tests/test_selectors.py -v
"""

import pytest

from billiardlab.models import DerivedKind
from billiardlab.utils.config import (
    ConfigError, RunConfig, build_run_config, load_sweep_config, merge_config, resolve_tolerance,
)
from billiardlab.utils.selectors import known_selectors, resolve_selector


class TestSelectors:
    @pytest.mark.parametrize("raw", ["X1", "x1", "X_1", "X(1)", "incenter", "  Incenter "])
    def test_incenter_spellings(self, raw):
        sel = resolve_selector(raw)
        assert sel.name == "X1"
        assert sel.index == 1

    def test_center_aliases(self):
        assert resolve_selector("centroid").index == 2
        assert resolve_selector("mittenpunkt").index == 9
        assert resolve_selector("nine point center").index == 5

    @pytest.mark.parametrize("raw", ["intouch", "intouch-vertices", "INTOUCH_VERTICES"])
    def test_derived_spellings(self, raw):
        sel = resolve_selector(raw)
        assert sel.name == "intouch-vertices"
        assert sel.kind is DerivedKind.INTOUCH

    @pytest.mark.parametrize("raw, kind", [
        ("feuerbach", DerivedKind.FEUERBACH),
        ("medial", DerivedKind.MEDIAL),
        ("intouch", DerivedKind.INTOUCH),
    ])
    def test_bare_derived_names_are_vertices(self, raw, kind):
        sel = resolve_selector(raw)
        assert sel.name == f"{kind.value}-vertices"
        assert sel.kind is kind
        assert sel.index is None

    def test_feuerbach_point_alias(self):
        assert resolve_selector("feuerbach point").index == 11
        assert resolve_selector("X11").name == "X11"

    def test_excentral_is_excenters(self):
        assert resolve_selector("excentral").name == "excenters"
        assert resolve_selector("excentral-vertices").name == "excenters"

    def test_composites(self):
        assert resolve_selector("anticompl_intouch").name == "anticompl-intouch"
        assert resolve_selector("orthic-incenter").index is None

    @pytest.mark.parametrize("raw", ["X7", "X(3000)", "nagel", ""])
    def test_unknown(self, raw):
        with pytest.raises(ConfigError):
            resolve_selector(raw)

    def test_known_selectors_resolve(self):
        for name in known_selectors():
            assert resolve_selector(name).name == name


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig(subcommand="orbit")
        assert (cfg.a, cfg.b, cfg.n, cfg.samples) == (1.5, 1.0, 3, 256)

    @pytest.mark.parametrize("kwargs", [
        {"a": 1.0, "b": 2.0},
        {"b": 0.0},
        {"n": 2},
        {"samples": 4},
        {"winding": 2},
        {"format": "xml"},
        {"bounces": 0},
        {"a_over_b": (0.5,)},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            RunConfig(subcommand="orbit", **kwargs)

    def test_winding_with_experimental_flag(self):
        assert RunConfig(subcommand="orbit", n=5, winding=2, allow_self_intersecting=True).winding == 2

    def test_sweep_uses_current_ratio(self):
        sweep = RunConfig(subcommand="invariants", a=3.0, b=2.0, samples=64).sweep()
        assert sweep.a_over_b == (1.5,)
        assert sweep.b == 2.0

    def test_sweep_needs_enough_samples(self):
        with pytest.raises(ConfigError):
            RunConfig(subcommand="invariants", samples=16).sweep()

    def test_unknown_field(self):
        with pytest.raises(ConfigError):
            build_run_config("orbit", {"colour": "red"})


class TestConfigFile:
    def test_load_and_merge(self, tmp_path):
        path = tmp_path / "sweep.yaml"
        path.write_text("n: 4\nsamples: 64\na_over_b: [1.25, 2]\ntolerances:\n  constant: 1e-9\nextra: 1\n")
        values = load_sweep_config(str(path))
        assert values["n"] == 4
        assert values["a_over_b"] == (1.25, 2.0)
        assert values["tolerances"] == {"constant": 1e-9}
        assert "extra" not in values
        merged = merge_config(values, {"n": 5})
        assert merged["n"] == 5
        assert merged["samples"] == 64

    def test_scalar_ratio(self, tmp_path):
        path = tmp_path / "sweep.yaml"
        path.write_text("a_over_b: 1.75\n")
        assert load_sweep_config(str(path))["a_over_b"] == (1.75,)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_sweep_config(str(tmp_path / "nope.yaml"))

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "sweep.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_sweep_config(str(path))

    def test_tolerance_resolution_order(self):
        overrides = {"r_over_R": 1e-6, "constant": 1e-7}
        assert resolve_tolerance(overrides, "r_over_R", "constant") == 1e-6
        assert resolve_tolerance(overrides, "cosine_sum", "constant") == 1e-7
        assert resolve_tolerance({}, "cosine_sum", "constant") == 1e-8
        assert resolve_tolerance({}, "circle_locus", "locus") == 1e-7
