"""Harness behavior: configuration, generators, the registry contract,
serialization round-trips, replay, fault injection, and the CLI."""

import json

import pytest
from click.testing import CliRunner
from conftest import L_S1, L_TOP, SKEL_A

from forcelab import automorphisms as am
from forcelab import conditions as cnd
from forcelab import core
from forcelab import errors
from forcelab import names as nm
from forcelab.conditions import ONE0, ONE1, ONE_P, Cond0, Cond1, ProductCond
from forcelab.errors import ForceLabError
from forcelab.harness import cli as fcli
from forcelab.harness import config as hcfg
from forcelab.harness import generators as gen
from forcelab.harness import mutations as mut
from forcelab.harness import registry as reg
from forcelab.harness import serialization as ser

SKEL_TOML = """
block_width = 4
[[levels]]
name = "0"
kind = "base"
[[levels]]
name = "aleph0"
kind = "omega"
f = 2
[[levels]]
name = "aleph1"
kind = "successor"
f = 2
[[levels]]
name = "alephw"
kind = "limit"
f = 3
[[levels]]
name = "alephw1"
kind = "successor"
f = 3
"""


def small_cfg(**kw):
    base = dict(skeleton=SKEL_A, bound=1, seed=0, cases=6)
    base.update(kw)
    return hcfg.RunConfig(**base)


class TestConfig:
    def test_parse_round_trip(self):
        assert hcfg.parse_skeleton(SKEL_TOML) == SKEL_A

    def test_skeleton_dict_round_trip(self):
        d = hcfg.skeleton_to_dict(SKEL_A)
        assert hcfg.skeleton_from_dict(d) == SKEL_A

    def test_bad_toml_rejected(self):
        with pytest.raises(ForceLabError) as e:
            hcfg.parse_skeleton("block_width = [unclosed")
        assert e.value.code == errors.CONFIG_ERROR

    def test_missing_levels_rejected(self):
        with pytest.raises(ForceLabError) as e:
            hcfg.parse_skeleton("block_width = 4")
        assert e.value.code == errors.CONFIG_ERROR

    def test_invalid_skeleton_rejected(self):
        bad = SKEL_TOML.replace('kind = "base"', 'kind = "limit"', 1)
        with pytest.raises(ForceLabError) as e:
            hcfg.parse_skeleton(bad)
        assert e.value.code == errors.CONFIG_ERROR

    def test_bound_must_be_positive(self):
        with pytest.raises(ForceLabError) as e:
            hcfg.validate_run_config(small_cfg(bound=0), set(reg.PROPERTIES))
        assert e.value.code == errors.CONFIG_ERROR

    def test_unknown_property_rejected(self):
        with pytest.raises(ForceLabError) as e:
            hcfg.validate_run_config(
                small_cfg(properties=("NO-SUCH",)), set(reg.PROPERTIES)
            )
        assert e.value.code == errors.CONFIG_ERROR

    def test_width_override(self):
        cfg = small_cfg(width=2)
        assert cfg.resolved_skeleton().block_width == 2
        assert cfg.skeleton.block_width == 4


class TestGenerators:
    def test_size_zero_yields_maxima(self):
        assert gen.gen_cond0(SKEL_A, 5, 0) == ONE0
        assert gen.gen_cond1(SKEL_A, 5, 0) == ONE1
        assert gen.gen_product(SKEL_A, 5, 0) == ONE_P
        assert gen.gen_aut0(SKEL_A, 5, 0).perm_map() == {}
        assert gen.gen_aut1(SKEL_A, 5, 0).levels() == []
        assert gen.gen_filter(SKEL_A, 5, 0).generators == (ONE_P,)

    def test_seeded_reproducibility(self):
        for seed in range(10):
            assert gen.gen_cond0(SKEL_A, seed, 5) == gen.gen_cond0(SKEL_A, seed, 5)
            assert gen.gen_cond1(SKEL_A, seed, 5) == gen.gen_cond1(SKEL_A, seed, 5)
            assert gen.gen_aut1(SKEL_A, seed, 3) == gen.gen_aut1(SKEL_A, seed, 3)

    def test_outputs_valid(self):
        for seed in range(25):
            assert not cnd.validate_cond0(SKEL_A, gen.gen_cond0(SKEL_A, seed, 5))
            assert not cnd.validate_cond1(SKEL_A, gen.gen_cond1(SKEL_A, seed, 5))
            assert not am.validate_aut0(SKEL_A, gen.gen_aut0(SKEL_A, seed, 3))
            assert not am.validate_aut1(SKEL_A, gen.gen_aut1(SKEL_A, seed, 3))
            assert not cnd.validate_filter(SKEL_A, gen.gen_filter(SKEL_A, seed, 3))

    def test_index_bounded_trees_are_chains(self):
        # with all indices forced to 0 the only trees are chain prefixes
        trees = gen.all_trees(SKEL_A, 5, index_bound=1)
        assert len(trees) == 6
        assert sorted(len(t) for t in trees) == [0, 1, 2, 3, 4, 5]

    def test_all_cond1_count_oracle(self):
        # per successor-prime level: absent, or ({0},{0}) with bit 0 or 1
        assert len(gen.all_cond1(SKEL_A, pos_bound=1)) == 9

    def test_all_trees_valid(self):
        for t in gen.all_trees(SKEL_A, 4):
            assert not core.validate_tree(SKEL_A, t)

    def test_shrink_reaches_single_vertex(self):
        p = gen.gen_cond0(SKEL_A, 3, 6)
        small = gen.shrink_to_minimal(p, lambda q: len(q.tree) >= 1)
        assert len(small.tree) == 1


class TestSerialization:
    def test_cond0_round_trip(self):
        for seed in range(10):
            p = gen.gen_cond0(SKEL_A, seed, 5)
            assert ser.cond0_from_dict(ser.cond0_to_dict(p)) == p

    def test_cond1_round_trip(self):
        for seed in range(10):
            p = gen.gen_cond1(SKEL_A, seed, 5)
            assert ser.cond1_from_dict(ser.cond1_to_dict(p)) == p

    def test_product_round_trip(self):
        p = gen.gen_product(SKEL_A, 2, 4)
        assert ser.cond_from_dict(ser.product_to_dict(p)) == p

    def test_aut0_round_trip(self):
        pi = am.index_swap_aut0(SKEL_A, [(L_S1, 0, 1), (L_TOP, 0, 2)])
        assert ser.aut0_from_dict(ser.aut0_to_dict(pi)).perm_map() == pi.perm_map()

    def test_name_round_trip(self):
        c = nm.pair_of(nm.g0_branch(L_S1, 0), nm.check_of(1, 2))
        assert ser.canonical_name_from_dict(ser.canonical_name_to_dict(c)) == c

    def test_spec_round_trip(self):
        spec = am.group_spec(
            am.SubgroupGen("fix0", L_S1, 0), am.SubgroupGen("small1", L_TOP, 2)
        )
        assert ser.spec_from_list(ser.spec_to_list(spec)) == spec

    def test_dumps_byte_deterministic(self):
        p = gen.gen_cond0(SKEL_A, 7, 5)
        a = ser.dumps(ser.cond0_to_dict(p))
        b = ser.dumps(ser.cond0_to_dict(ser.cond0_from_dict(ser.loads(a))))
        assert a == b

    def test_bad_json_raises_parse_error(self):
        with pytest.raises(ForceLabError) as e:
            ser.loads("{not json")
        assert e.value.code == errors.PARSE_ERROR

    def test_bad_condition_record(self):
        with pytest.raises(ForceLabError) as e:
            ser.cond_from_dict({"kind": "nope"})
        assert e.value.code == errors.PARSE_ERROR


class TestRegistryContract:
    def test_exactly_23_properties(self):
        assert len(reg.PROPERTIES) == 23

    def test_every_property_documents_invariants(self):
        for spec in reg.PROPERTIES.values():
            assert spec.doc
            assert spec.invariants

    def test_every_invariant_is_covered(self):
        # the build fails if a module invariant loses its checker
        covered = {k for spec in reg.PROPERTIES.values() for k in spec.invariants}
        assert covered == set(reg.ALL_INVARIANTS)
        for prefix in ("core.", "cond.", "aut.", "names.", "quot."):
            assert any(k.startswith(prefix) for k in covered)

    def test_run_is_deterministic(self):
        cfg = small_cfg(cases=5)
        a = [(r.property_id, r.serial, r.status, r.detail) for r in reg.run(cfg)]
        b = [(r.property_id, r.serial, r.status, r.detail) for r in reg.run(cfg)]
        assert a == b

    def test_seed_changes_sampled_payloads(self):
        a = list(reg.run(small_cfg(seed=1, cases=4, properties=("P0-POSET",))))
        b = list(reg.run(small_cfg(seed=2, cases=4, properties=("P0-POSET",))))
        assert [r.payload for r in a] != [r.payload for r in b]

    def test_selection_restricts_stream(self):
        reports = list(reg.run(small_cfg(properties=("HOMOG1", "MBETA-ENUM"))))
        assert {r.property_id for r in reports} == {"HOMOG1", "MBETA-ENUM"}

    def test_payloads_are_replayable_json(self):
        for rep in reg.run(small_cfg(cases=3, properties=("P1-POSET",))):
            data = json.loads(rep.payload)
            assert data["property"] == "P1-POSET"
            assert data["serial"] == rep.serial

    def test_default_run_all_green(self):
        for rep in reg.run(small_cfg(cases=4)):
            assert rep.status in ("pass", "skip"), (rep.property_id, rep.detail)


class TestReplay:
    def test_round_trip(self):
        reports = list(reg.run(small_cfg(cases=4, properties=("RHO1-PROJ",))))
        target = reports[2]
        again = reg.replay(target.payload)
        assert (again.property_id, again.serial, again.status) == (
            target.property_id,
            target.serial,
            target.status,
        )

    def test_malformed_payload(self):
        with pytest.raises(ForceLabError) as e:
            reg.replay("][")
        assert e.value.code == errors.PARSE_ERROR

    def test_incomplete_payload(self):
        with pytest.raises(ForceLabError) as e:
            reg.replay(ser.dumps({"property": "P0-POSET"}))
        assert e.value.code == errors.PARSE_ERROR

    def test_unknown_property_payload(self):
        payload = json.loads(list(reg.run(small_cfg(cases=2, properties=("P1-POSET",))))[0].payload)
        payload["property"] = "NO-SUCH"
        with pytest.raises(ForceLabError) as e:
            reg.replay(ser.dumps(payload))
        assert e.value.code == errors.PARSE_ERROR

    def test_replayed_failure_reproduces(self):
        with mut.apply_mutation("rho1-keeps-truncated-bits"):
            reports = list(reg.run(small_cfg(cases=4, properties=("RHO1-PROJ",))))
            bad = next(r for r in reports if r.status == "fail")
            again = reg.replay(bad.payload)
            assert again.status == "fail"
        # after restoration the same payload passes again
        assert reg.replay(bad.payload).status == "pass"


class TestMutations:
    def test_registry_catches_every_mutation(self):
        for name, m in mut.MUTATIONS.items():
            with mut.apply_mutation(name):
                cfg = small_cfg(cases=20, exhaustive=True, properties=m.expected)
                statuses = [r.status for r in reg.run(cfg)]
            assert "fail" in statuses, name

    def test_mutations_restore_cleanly(self):
        before = cnd.leq0
        with mut.apply_mutation("leq0-ignores-labels"):
            assert cnd.leq0 is not before
        assert cnd.leq0 is before


class TestCli:
    def setup_method(self):
        self.runner = CliRunner()

    def _config_file(self, tmp_path):
        path = tmp_path / "skel.toml"
        path.write_text(SKEL_TOML)
        return str(path)

    def test_validate(self, tmp_path):
        res = self.runner.invoke(fcli.main, ["validate", self._config_file(tmp_path)])
        assert res.exit_code == 0
        assert json.loads(res.stdout)["block_width"] == 4

    def test_validate_rejects_bad_config(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("block_width = 4")
        res = self.runner.invoke(fcli.main, ["validate", str(path)])
        assert res.exit_code == 2

    def test_list_properties(self):
        res = self.runner.invoke(fcli.main, ["list-properties"])
        assert res.exit_code == 0
        lines = [json.loads(l) for l in res.stdout.splitlines()]
        assert len(lines) == 23
        assert {l["id"] for l in lines} == set(reg.PROPERTIES)

    def test_check_green_exit_zero(self, tmp_path):
        res = self.runner.invoke(
            fcli.main,
            [
                "check",
                "MBETA-ENUM",
                "--config",
                self._config_file(tmp_path),
                "--cases",
                "4",
            ],
        )
        assert res.exit_code == 0
        for line in res.stdout.splitlines():
            assert json.loads(line)["status"] in ("pass", "skip")

    def test_check_failure_exit_one(self, tmp_path):
        with mut.apply_mutation("enum-m-beta-duplicates-first"):
            res = self.runner.invoke(
                fcli.main,
                ["check", "MBETA-ENUM", "--config", self._config_file(tmp_path)],
            )
        assert res.exit_code == 1

    def test_check_unknown_property_exit_two(self, tmp_path):
        res = self.runner.invoke(
            fcli.main, ["check", "NO-SUCH", "--config", self._config_file(tmp_path)]
        )
        assert res.exit_code == 2

    def test_project_tree_condition(self, tmp_path):
        p = reg._chain_cond(SKEL_A)
        cond = tmp_path / "cond.json"
        cond.write_text(ser.dumps(ser.cond0_to_dict(p)))
        res = self.runner.invoke(
            fcli.main,
            [
                "project",
                "--config",
                self._config_file(tmp_path),
                "--cond",
                str(cond),
                "--beta",
                "2",
            ],
        )
        assert res.exit_code == 0
        assert json.loads(res.stdout)["kind"] == "icond"

    def test_project_rectangle(self, tmp_path):
        c1 = Cond1({L_S1: ({0}, {0, 1}, {(0, 0): 1, (0, 1): 0})})
        cond = tmp_path / "cond1.json"
        cond.write_text(ser.dumps(ser.cond1_to_dict(c1)))
        res = self.runner.invoke(
            fcli.main,
            [
                "project",
                "--config",
                self._config_file(tmp_path),
                "--cond",
                str(cond),
                "--beta",
                "1",
            ],
        )
        assert res.exit_code == 0
        out = json.loads(res.stdout)
        assert out["kind"] == "cond1"
        assert out["blocks"][0]["ys"] == [0]

    def test_orbit_fixed(self, tmp_path):
        name = tmp_path / "name.json"
        name.write_text(ser.dumps(ser.canonical_name_to_dict(nm.g0_branch(L_S1, 0))))
        group = tmp_path / "group.json"
        group.write_text(ser.dumps([["fix0", L_S1, 0]]))
        res = self.runner.invoke(
            fcli.main,
            [
                "orbit",
                "--config",
                self._config_file(tmp_path),
                "--name",
                str(name),
                "--group",
                str(group),
                "--samples",
                "10",
            ],
        )
        assert res.exit_code == 0
        assert json.loads(res.stdout)["fixed"] is True

    def test_replay_round_trip(self, tmp_path):
        rep = next(iter(reg.run(small_cfg(cases=3, properties=("P1-POSET",)))))
        payload = tmp_path / "payload.json"
        payload.write_text(rep.payload)
        res = self.runner.invoke(fcli.main, ["replay", str(payload)])
        assert res.exit_code == 0
        assert json.loads(res.stdout)["property"] == "P1-POSET"

    def test_replay_parse_error_exit_two(self, tmp_path):
        payload = tmp_path / "payload.json"
        payload.write_text("nonsense")
        res = self.runner.invoke(fcli.main, ["replay", str(payload)])
        assert res.exit_code == 2
