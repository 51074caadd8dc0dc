import csv
import io
import json
import math
import random
from decimal import Decimal
from fractions import Fraction

import pytest

from dsramsey.bounds import (
    BIP3_CUBIC,
    BoundError,
    bip3_threshold,
    bip_lower,
    bip_upper,
    complete_lower,
    cor_ds_upper,
    family_gs_upper,
    ghk_exact,
    main1_upper,
    render_table,
    ruotolo_song,
    sigma_product_max,
    table_rows,
    unbalanced_lower,
)

from oracles import decimal_root


class TestComplete:
    @pytest.mark.parametrize("n,m,value", [(1, 1, 5), (2, 2, 8), (4, 3, 12), (2, 1, None), (5, 1, 11),
                                           (9, 3, 20), (6, 1, 14)])
    def test_ghk(self, n, m, value):
        rec = ghk_exact(n, m)
        assert (rec.value if rec else None) == value

    def test_ghk_open_range(self):
        # sqrt(2)*3 < 5 < 9 with m = 3
        assert ghk_exact(5, 3) is None

    def test_ghk_diagonal(self):
        assert all(ghk_exact(n, n).value == 3 * n + 2 for n in range(1, 500))

    def test_gs(self):
        assert family_gs_upper(2, 1).value == 5
        assert family_gs_upper(3, 1).value == Fraction(17, 2)
        with pytest.raises(BoundError):
            family_gs_upper(2, 0)

    def test_main1(self):
        assert all(main1_upper(2, n).value == 3 * n + 2 for n in range(1, 50))
        assert main1_upper(3, 1).value == 9
        assert main1_upper(3, 7).value == 5 * 7 + 4
        assert "5n+1" in main1_upper(3, 7).note

    @pytest.mark.parametrize("r,n,value,source", [(3, 1, 6, "affine-blowup"), (4, 1, 7, "two-r-minus-two"),
                                                  (7, 3, 37, "two-r-minus-two"), (4, 3, 20, "affine-blowup"),
                                                  (10, 9, 164, "affine-blowup")])
    def test_complete_lower(self, r, n, value, source):
        rec = complete_lower(r, n)
        assert (rec.value, rec.source) == (value, source)

    def test_ruotolo_song(self):
        assert ruotolo_song(3, 100, 1).value == 303 and ruotolo_song(3, 100, 1).kind == "exact"
        rec = ruotolo_song(2, 100, 1)
        assert (rec.kind, rec.value, rec.upper_value) == ("range", 201, 203)
        rec = ruotolo_song(5, 10, 10)
        assert rec.caveat and rec.conditions[0].holds is None and rec.value == 62

    @pytest.mark.parametrize("r,n,m,value", [(3, 5, 1, 18), (4, 5, 1, 21), (5, 3, 3, 25)])
    def test_unbalanced(self, r, n, m, value):
        assert unbalanced_lower(r, n, m).value == value

    def test_unbalanced_without_plane(self):
        rec = unbalanced_lower(7, 2, 2)
        assert rec.note == "plane-dependent terms dropped"
        assert rec.value == max(7 * 2 + 1, 2 * 6 * 2 + 1)


class TestBipartite:
    def test_r2_exact(self):
        assert all(bip_upper(2, n).value == 2 * n + 1 for n in range(1, 100))
        assert isinstance(bip_upper(2, 5).value, int)

    def test_r4_r5(self):
        assert bip_upper(4, 1).value - 1 == pytest.approx((7 + math.sqrt(17)) / 2)
        assert round(bip_upper(4, 1).value - 1, 4) == 5.5616
        assert round(bip_upper(5, 1).value - 1, 4) == 7.4495

    def test_r3_strict(self):
        rec = bip_upper(3, 10)
        assert rec.strict and rec.value == Fraction(36678, 1000)
        assert bip_upper(3, 1).value == 4

    def test_threshold_root(self):
        t = bip3_threshold()
        oracle = decimal_root([Decimal(c) for c in BIP3_CUBIC], Decimal(3), Decimal(4))
        assert abs(Decimal(t.numerator) / t.denominator - oracle) < Decimal("1e-10")
        assert Decimal("3.6677") < oracle < Decimal("3.6678")

    def test_lower_r3(self):
        rec = bip_lower(3, 10)
        assert rec.source == "small-odd"
        assert rec.value == pytest.approx((2 + math.sqrt(2)) * 10 - 2)

    @pytest.mark.parametrize("r,n,coeff", [(4, 7, 5), (6, 3, 8)])
    def test_lower_even_agree(self, r, n, coeff):
        rec = bip_lower(r, n)
        values = dict(rec.candidates)
        assert rec.value == values["DGKRS"] == values["small-even"] == coeff * n + 1

    def test_lower_r5(self):
        rec = bip_lower(5, 100)
        assert rec.value == pytest.approx(644.948974 - 3, abs=1e-6)
        assert rec.integer_value == 642

    def test_cor_ds(self):
        assert cor_ds_upper(3, 4, 2).value == 13
        assert cor_ds_upper(3, 3, 2).value == pytest.approx(10.464, abs=1e-3)
        assert all(cor_ds_upper(2, m, m).value == 2 * m + 1 for m in range(1, 30))

    def test_sampled_order(self):
        rng = random.Random(0)
        for _ in range(3000):
            r, n = rng.randint(2, 12), rng.randint(1, 10**6)
            assert bip_lower(r, n).value <= bip_upper(r, n).value
            if r >= 3:
                assert complete_lower(r, n).value <= main1_upper(r, n).value

    @pytest.mark.parametrize("fn,args", [(bip_upper, (1, 1)), (bip_lower, (2, 0)), (cor_ds_upper, (3, 1, 2)),
                                         (ghk_exact, (1, 2)), (unbalanced_lower, (2, 1, 1))])
    def test_guards(self, fn, args):
        with pytest.raises(BoundError):
            fn(*args)


class TestSigma:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("alpha", [2.0, 4.5, 10.0])
    def test_max(self, k, alpha):
        best, arg = sigma_product_max(k, alpha, steps=20000)
        assert best <= k * k / (4 * alpha) + 1e-12
        assert abs(best - k * k / (4 * alpha)) < 1e-7
        assert abs(arg - min(1.0, k / (2 * alpha))) < 1e-3


class TestTable:
    def test_bipartite_rows(self):
        rows = {row.r: row for row in table_rows("bipartite")}
        assert (rows["3"].lower_coeff, rows["3"].upper_coeff) == ("3.4142", "3.6678")
        assert (rows["5"].lower_coeff, rows["5"].upper_coeff) == ("6.4494", "7.4495")
        assert rows["4"].upper_coeff == "5.5616" and rows["4"].lower() == "5n+1"
        assert rows["2"].lower() == rows["2"].upper() == "2n+1"

    def test_complete_rows(self):
        rows = {row.r: row for row in table_rows("complete")}
        assert rows["2"].lower() == rows["2"].upper() == "3n+2"
        assert rows["3"].lower() == "4n+2"
        assert rows["3"].upper() == "5n+4" and "5n+1" in rows["3"].note

    def test_csv_columns(self):
        out = list(csv.reader(io.StringIO(render_table("bipartite", "csv"))))
        assert out[0] == ["r", "setting", "lower_coeff", "lower_const", "lower_source",
                          "upper_coeff", "upper_const", "upper_source"]
        assert all(len(row) == 8 for row in out)

    def test_json_and_text(self):
        doc = json.loads(render_table("complete", "json"))
        assert doc[0]["r"] == "2" and "note" in doc[0]
        text = render_table("bipartite")
        assert "3.4142n-2" in text and "3.6678n" in text

    def test_unknown(self):
        with pytest.raises(BoundError):
            table_rows("torus")
        with pytest.raises(BoundError):
            render_table("complete", "xml")
