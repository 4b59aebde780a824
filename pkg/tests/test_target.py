import json

import pytest

from stablemaps.qfield import (MOEBIUS_CLASS, P_ONE, RatFunc, U, UPoly,
                               div_exact)
from stablemaps.target import (count_maps_bruteforce, eisenstein_series,
                               load_target, nclass, parse_target,
                               point_target, projective_space,
                               target_from_json, verify_recurrence)


def pn_class(n):
    return UPoly([1] * (n + 1))


class TestProjectiveSpace:
    def test_degree_one_line(self):
        w = projective_space(1)
        assert w.map_class((1,)) == RatFunc(MOEBIUS_CLASS)

    def test_degree_zero_is_target(self):
        w = projective_space(1)
        assert w.map_class((0,)) == RatFunc(UPoly((1, 1)))

    def test_plane_degree_one(self):
        # (u^2+u+1)(u^3-u)
        w = projective_space(2)
        assert w.map_class((1,)) == RatFunc(pn_class(2) * (UPoly.monomial(3) - U))

    def test_rejects_n_below_one(self):
        with pytest.raises(ValueError):
            projective_space(0)

    def test_map_class_divisible_by_target_class(self):
        # evaluation at a point fibers the map space over the target
        for n in (1, 2, 3):
            w = projective_space(n)
            for d in range(1, 5):
                q = div_exact(w.map_class((d,)).as_upoly(), pn_class(n))
                assert q * pn_class(n) == w.map_class((d,)).as_upoly()


class TestEisenstein:
    def test_line_series(self):
        w = projective_space(1)
        e = eisenstein_series(w, (3,))
        assert e.coeff(0, (0,)) == RatFunc(UPoly((1, 1)))
        assert e.coeff(0, (1,)) == RatFunc(UPoly((0, -1, 0, 1)))   # u^3 - u
        assert e.coeff(0, (2,)) == RatFunc(UPoly((0, 0, 0, -1, 0, 1)))  # u^5 - u^3

    def test_degree_zero_is_target_class(self):
        for w in (projective_space(2), point_target()):
            e = eisenstein_series(w, w.grading.zero)
            assert e.coeff(0, w.grading.zero) == RatFunc(w.pw)

    def test_geometric_ratio(self):
        # successive map classes differ by the factor u^(n+1) from d >= 1 on
        for n in (1, 2, 3):
            w = projective_space(n)
            e = eisenstein_series(w, (4,))
            step = RatFunc(UPoly.monomial(n + 1))
            for d in range(1, 4):
                assert e.coeff(0, (d + 1,)) == e.coeff(0, (d,)) * step


class TestNClass:
    def test_line(self):
        assert nclass(projective_space(1), (1,)) == RatFunc(P_ONE, UPoly((1, 1)))

    def test_plane_is_one(self):
        assert nclass(projective_space(2), (1,)) == RatFunc(1)

    def test_beta_zero_universal(self):
        expected = RatFunc(P_ONE, MOEBIUS_CLASS)
        for w in (point_target(), projective_space(1), projective_space(3)):
            assert nclass(w, w.grading.zero) == expected
            assert nclass(w, w.grading.zero) * RatFunc(MOEBIUS_CLASS) == RatFunc(1)


class TestRecurrence:
    def test_small_cases_by_hand(self):
        w = projective_space(1)
        um1 = RatFunc(UPoly((-1, 1)))
        # d = 0: [P^1](u-1) = u^2-1
        assert w.map_class((0,)) * um1 == RatFunc(UPoly((-1, 0, 1)))
        # d = 1: [Map_1](u-1) + [P^1](u^2-1) = u^4-1
        got = w.map_class((1,)) * um1 + w.map_class((0,)) * RatFunc(UPoly((-1, 0, 1)))
        assert got == RatFunc(UPoly.monomial(4) - P_ONE)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_holds(self, n):
        assert verify_recurrence(n, 4)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_forward_substitution_recovers_classes(self, n):
        # solving the recurrence for [Map_d] must reproduce the closed form
        w = projective_space(n)
        um1 = RatFunc(UPoly((-1, 1)))
        known = {0: RatFunc(pn_class(n))}
        for d in range(1, 5):
            rhs = RatFunc(UPoly.monomial((n + 1) * (d + 1)) - P_ONE)
            for k in range(1, d + 1):
                rhs = rhs - known[d - k] * RatFunc(UPoly.monomial(k + 1) - P_ONE)
            known[d] = rhs / um1
            assert known[d] == w.map_class((d,))


class TestBruteForceCount:
    def test_examples(self):
        assert count_maps_bruteforce(1, 1, 2) == 6   # Moebius group over F_2
        assert count_maps_bruteforce(1, 1, 3) == 24
        assert count_maps_bruteforce(2, 1, 2) == 42

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("d", [1, 2])
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_matches_closed_form(self, n, d, p):
        w = projective_space(n)
        assert count_maps_bruteforce(n, d, p) == w.map_class((d,)).eval_at(p)

    def test_degree_zero(self):
        # constant maps: the target itself
        assert count_maps_bruteforce(1, 0, 5) == 6  # |P^1(F_5)|
        assert count_maps_bruteforce(2, 0, 3) == 13

    def test_size_guard(self):
        with pytest.raises(ValueError, match="too large"):
            count_maps_bruteforce(3, 3, 5)

    def test_prime_restriction(self):
        with pytest.raises(ValueError):
            count_maps_bruteforce(1, 1, 7)


def p2_descriptor():
    w = projective_space(2)
    return {
        "name": "plane-from-file",
        "rank": 1,
        "pw": pn_class(2).to_json(),
        "classes": [
            {"beta": [d], "value": w.map_class((d,)).to_json()} for d in range(1, 4)
        ],
    }


class TestLoadTarget:
    def test_roundtrip_matches_builtin(self, tmp_path):
        path = tmp_path / "p2.json"
        path.write_text(json.dumps(p2_descriptor()))
        loaded = load_target(path)
        builtin = projective_space(2)
        assert loaded.pw == builtin.pw
        for d in range(4):
            assert loaded.map_class((d,)) == builtin.map_class((d,))
        assert nclass(loaded, (1,)) == nclass(builtin, (1,))

    def test_parse_target_dispatch(self, tmp_path):
        assert parse_target("point").grading.rank == 0
        assert parse_target("pn:3").n == 3
        path = tmp_path / "t.json"
        path.write_text(json.dumps(p2_descriptor()))
        assert parse_target(f"file:{path}").name == "plane-from-file"
        with pytest.raises(ValueError):
            parse_target("nonsense")

    def test_missing_class_reported(self, tmp_path):
        path = tmp_path / "p2.json"
        path.write_text(json.dumps(p2_descriptor()))
        loaded = load_target(path)
        with pytest.raises(ValueError, match="target data incomplete"):
            loaded.map_class((7,))

    def test_rank_mismatch_rejected(self):
        data = p2_descriptor()
        data["classes"][0]["beta"] = [1, 0]
        with pytest.raises(ValueError, match="rank"):
            target_from_json(data)

    def test_duplicate_beta_rejected(self):
        data = p2_descriptor()
        data["classes"].append(data["classes"][0])
        with pytest.raises(ValueError, match="duplicate"):
            target_from_json(data)

    def test_pole_at_one_rejected(self):
        data = p2_descriptor()
        data["classes"][0]["value"] = {"num": ["1"], "den": ["-1", "1"]}
        with pytest.raises(ValueError, match="pole at u = 1"):
            target_from_json(data)

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ValueError, match="malformed"):
            load_target(path)

    def test_rank_two_product_accepted(self):
        # a rank-2 descriptor is validated structurally only
        w = projective_space(1)
        classes = []
        for a in range(3):
            for b in range(3):
                if a == b == 0:
                    continue
                value = w.map_class((a,)) * w.map_class((b,)) / RatFunc(UPoly((1, 1)))
                classes.append({"beta": [a, b], "value": value.to_json()})
        data = {"name": "p1xp1", "rank": 2,
                "pw": (UPoly((1, 1)) * UPoly((1, 1))).to_json(),
                "classes": classes}
        loaded = target_from_json(data)
        assert loaded.grading.rank == 2
        assert loaded.map_class((1, 1)) == RatFunc(MOEBIUS_CLASS) ** 2 / RatFunc(UPoly((1, 1)))
