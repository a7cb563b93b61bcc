"""Acceptance suite: one test per shipping criterion, each printing a
PASS/FAIL line (run with ``pytest -s`` to see them on success)."""

import io
import json
import random
import time
from contextlib import contextmanager

import pytest

from pqcheck.checker import check_source
from pqcheck.cli import run as cli_run
from pqcheck.dimension import DimVector, dim_eq, dim_mul, dim_pow
from pqcheck.errors import Type2KoqError
from pqcheck.koq import KoqRegistry, KoqSignature, combine_mul, sig_pow
from pqcheck.quantity import Quantity, q_convert
from pqcheck.units import UnitRegistry, conversion_factor


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def read(corpus_dir, name):
    return (corpus_dir / name).read_text(encoding="utf-8")


def test_pint1_reproduction(corpus_dir):
    with criterion("pint1-reproduction"):
        started = time.perf_counter()
        report = check_source(read(corpus_dir, "pint1.pq"))
        elapsed = time.perf_counter() - started

        total = report.bindings["total"]
        assert total.value == pytest.approx(111.084, rel=1e-9)
        assert total.unit.display_str() == "cm"

        (diag,) = report.diagnostics
        assert diag.code == "E101"
        assert diag.payload["left_dimension"] == "[length]"
        assert diag.payload["right_dimension"] == "[length] / [time]"
        assert elapsed < 1.0


def test_pint2_static_catch(corpus_dir):
    with criterion("pint2-static-catch"):
        report = check_source(read(corpus_dir, "pint2.pq"))
        assert [d.code for d in report.diagnostics] == ["E102"]
        (diag,) = report.diagnostics
        assert diag.line == 7  # the rebinding let speed: SPEED [km/hr] = ...


def test_koq_corpus(corpus_dir):
    with criterion("koq-corpus"):
        report = check_source(read(corpus_dir, "koqerrors.pq"))
        assert [(d.line, d.code) for d in report.diagnostics] == \
            [(17, "E201"), (19, "E202")]
        e201, e202 = report.diagnostics
        assert "ROTENERGY vs 'TORQUE'" in e201.message
        assert e202.payload["admissible"] == ["MOI*AV*AV"]
        # the corrected tail (lines 20-25), including the post-redefinition
        # TORQUE = POWER/AV tagging, is diagnostic-free
        assert not [d for d in report.diagnostics if 20 <= d.line <= 25]
        assert report.bindings["torque2"].sig.render() == "TORQUE"

        sink = io.StringIO()
        exit_code = cli_run(["check", str(corpus_dir / "koqerrors.pq")],
                            stdout=sink)
        assert exit_code == 1


def test_numeric_spot_checks(corpus_dir):
    with criterion("numeric-spot-checks"):
        report = check_source(read(corpus_dir, "koqerrors.pq"))
        expected = {
            "torque_avg": 779.5804,
            "energy2": 7.7106e5,
            "torque2": 7.1301e6,
        }
        for name, value in expected.items():
            binding = report.bindings[name]
            assert binding.known
            assert binding.value == pytest.approx(value, rel=1e-3), name
            assert binding.unit.dimension.display() == "L^2 M^1 T^-2"


def test_strict_angle_mode(corpus_dir):
    with criterion("strict-angle-mode"):
        source = read(corpus_dir, "strict_angle.pq")
        assert check_source(source).diagnostics == []
        strict = check_source(source, strict_angle=True)
        assert [d.code for d in strict.diagnostics] == ["E101"]
        (diag,) = strict.diagnostics
        # the mismatch is in the angle component
        assert "[angle]" in diag.payload["right_dimension"]
        assert "[angle]" not in diag.payload["left_dimension"]


def test_property_dimension_group_laws():
    with criterion("property-dimension-group-laws"):
        rng = random.Random(1234)
        zero = DimVector.zero()

        def vec():
            return DimVector(tuple(rng.randint(-5, 5) for _ in range(7)))

        for _ in range(1000):
            a, b, c = vec(), vec(), vec()
            assert dim_mul(a, b) == dim_mul(b, a)
            assert dim_mul(dim_mul(a, b), c) == dim_mul(a, dim_mul(b, c))
            assert dim_mul(a, zero) == a
            assert dim_mul(a, dim_pow(a, -1)) == zero


def test_property_conversion_round_trip():
    with criterion("property-conversion-round-trip"):
        reg = UnitRegistry.builtin()
        by_dim = {}
        for name, unit in reg.known_units().items():
            by_dim.setdefault(unit.dimension.exps, []).append(name)
        pairs = 0
        for names in by_dim.values():
            for a_name in names:
                for b_name in names:
                    a, b = reg.parse(a_name), reg.parse(b_name)
                    assert conversion_factor(a, b) * conversion_factor(b, a) \
                        == pytest.approx(1.0, rel=1e-9)
                    q = Quantity(3.7, a)
                    back = q_convert(q_convert(q, b), a)
                    assert back.value == pytest.approx(3.7, rel=1e-9)
                    pairs += 1
        assert pairs >= 50


def test_property_signature_canonicalization():
    with criterion("property-signature-canonicalization"):
        rng = random.Random(99)
        names = ["AV", "MOI", "TIME", "POWER", "X1", "X2"]

        def tree_eval(atoms):
            # random re-parenthesization of a product of signed atoms
            if len(atoms) == 1:
                name, inverted = atoms[0]
                s = KoqSignature.single(name)
                return sig_pow(s, -1) if inverted else s
            cut = rng.randint(1, len(atoms) - 1)
            return combine_mul(tree_eval(atoms[:cut]), tree_eval(atoms[cut:]))

        for _ in range(100):
            atoms = [(rng.choice(names), rng.random() < 0.4)
                     for _ in range(rng.randint(1, 10))]
            reference = KoqSignature.empty()
            for name, inverted in atoms:
                reference = combine_mul(
                    reference, KoqSignature.single(name),
                    "/" if inverted else "*")
            shuffled = list(atoms)
            rng.shuffle(shuffled)
            assert tree_eval(shuffled) == reference


def test_property_tag_oracle_agreement():
    with criterion("property-tag-oracle"):
        rng = random.Random(31415)
        names = ["A", "B", "C", "D", "E"]

        def random_sig():
            chosen = rng.sample(names, k=rng.randint(0, 4))
            return KoqSignature.from_dict(
                {n: rng.choice([-3, -2, -1, 1, 2, 3]) for n in chosen})

        for _ in range(500):
            reg = KoqRegistry()
            declared: dict[str, list[dict[str, int]]] = {}
            for _ in range(rng.randint(0, 4)):
                target = rng.choice(names)
                rhs = random_sig()
                if rhs.is_empty() or rhs == KoqSignature.single(target):
                    continue
                if not any(e > 0 for _, e in rhs.terms):
                    continue
                reg.declare_relation(target, rhs.render())
                forms = declared.setdefault(target, [])
                if rhs.as_dict() not in forms:
                    forms.append(rhs.as_dict())

            name = rng.choice(names)
            node = random_sig()
            expected_ok = (node.is_empty()
                           or node.as_dict() == {name: 1}
                           or any(node.as_dict() == form
                                  for form in declared.get(name, [])))
            if expected_ok:
                assert reg.tag(name, node) == KoqSignature.single(name)
            else:
                with pytest.raises(Type2KoqError):
                    reg.tag(name, node)


def test_property_json_determinism(corpus_dir, tmp_path):
    with criterion("property-json-determinism"):
        outputs = set()
        for i in range(3):
            out_path = tmp_path / f"run{i}.json"
            with open(out_path, "w") as fh:
                code = cli_run(
                    ["check", str(corpus_dir / "koqerrors.pq"),
                     str(corpus_dir / "pint1.pq"), "--format", "json"],
                    stdout=fh)
            assert code == 1
            outputs.add(out_path.read_bytes())
        assert len(outputs) == 1
        doc = json.loads(outputs.pop())
        assert doc["summary"]["errors"] == 3
