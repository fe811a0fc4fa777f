import datetime as dt
import json

import numpy as np
import pytest

from lexecon.errors import DataError, ZeroLengthError
from lexecon.lexicon import WordList
from lexecon.sentiment import (Article, article_sentiment,
                               build_monthly_index, iter_corpus,
                               read_series_csv, tokenize, write_series_csv)

POS = WordList(name="pos", words=("gain", "rally", "growth"))
NEG = WordList(name="neg", words=("panic", "fear", "crash"))


class TestTokenize:
    def test_punctuation_and_case(self):
        assert tokenize("Stocks FELL, sharply.") == ["stocks", "fell",
                                                     "sharply"]

    def test_empty(self):
        assert tokenize("") == []

    def test_hyphen_split(self):
        assert tokenize("risk-off") == ["risk", "off"]

    def test_underscore_and_digits(self):
        assert tokenize("q3_2008 up 5%") == ["q3", "2008", "up", "5"]

    def test_unicode_letters_kept(self):
        assert tokenize("café boom") == ["café", "boom"]


class TestArticleSentiment:
    def test_direct_arithmetic(self):
        tokens = ["gain", "rally", "panic"] + ["x"] * 7
        sc = article_sentiment(tokens, POS, NEG)
        assert (sc.positive_hits, sc.negative_hits, sc.total) == (2, 1, 10)
        assert sc.score == pytest.approx(0.1)

    def test_no_hits_neutral(self):
        sc = article_sentiment(["a", "b"], POS, NEG)
        assert sc.score == 0.0

    def test_all_negative_lower_bound(self):
        sc = article_sentiment(["panic", "fear"], POS, NEG)
        assert sc.score == -1.0

    def test_multiplicity(self):
        sc = article_sentiment(["gain", "gain", "gain", "x"], POS, NEG)
        assert sc.positive_hits == 3

    def test_conflict_token_counts_to_neither(self):
        pos = WordList(name="p", words=("boom", "shared"))
        neg = WordList(name="n", words=("bust", "shared"))
        sc = article_sentiment(["shared", "boom", "x"], pos, neg)
        assert (sc.positive_hits, sc.negative_hits) == (1, 0)
        assert sc.conflict_hits == 1
        assert sc.positive_hits + sc.negative_hits <= sc.total

    def test_empty_tokens_error(self):
        with pytest.raises(ZeroLengthError):
            article_sentiment([], POS, NEG)


def art(i, date, text, tags=("t",)):
    return Article(id=f"a{i}", date=dt.date.fromisoformat(date),
                   tags=tuple(tags), text=text)


class TestMonthlyIndex:
    def test_symmetric_pair_cancels(self):
        arts = [art(0, "2001-03-05", "gain " + "x " * 9),
                art(1, "2001-03-20", "panic " + "x " * 9)]
        series = build_monthly_index(arts, POS, NEG, name="s")
        assert series.months == ("2001-03",)
        assert series.values[0] == pytest.approx(0.0)
        assert series.counts == (2,)

    def test_singleton_month(self):
        arts = [art(0, "1999-12-31", "rally gain panic x")]
        series = build_monthly_index(arts, POS, NEG, name="s")
        assert series.values[0] == pytest.approx(0.25)

    def test_hand_aggregated_three_months(self):
        arts = [
            art(0, "2001-01-10", "gain gain panic x"),       # 1/4
            art(1, "2001-01-20", "crash x x x"),              # -1/4
            art(2, "2001-02-01", "rally rally rally panic"),  # 2/4
            art(3, "2001-03-15", "x x x x"),                  # 0
        ]
        series = build_monthly_index(arts, POS, NEG, name="s")
        assert series.months == ("2001-01", "2001-02", "2001-03")
        np.testing.assert_allclose(series.values, [0.0, 0.5, 0.0])
        assert series.counts == (2, 1, 1)

    def test_empty_corpus_errors(self):
        with pytest.raises(DataError):
            build_monthly_index([], POS, NEG, name="s")

    def test_length_weighted_mode(self):
        arts = [art(0, "2001-01-10", "gain x"),          # 1/2, t=2
                art(1, "2001-01-20", "x x x x x x")]     # 0,   t=6
        series = build_monthly_index(arts, POS, NEG, name="s",
                                     weight_by_length=True)
        assert series.values[0] == pytest.approx(1.0 / 8.0)


def random_corpus(rng, n_articles=30):
    vocab = ["gain", "rally", "panic", "fear", "alpha", "beta", "gamma"]
    arts = []
    for i in range(n_articles):
        n_tok = int(rng.integers(1, 12))
        words = rng.choice(vocab, size=n_tok)
        month = int(rng.integers(1, 13))
        day = int(rng.integers(1, 28))
        arts.append(art(i, f"2005-{month:02d}-{day:02d}", " ".join(words)))
    return arts


class TestProperties:
    def test_swap_negates_and_order_independent(self):
        rng = np.random.default_rng(123)
        for case in range(200):
            arts = random_corpus(rng)
            s1 = build_monthly_index(arts, POS, NEG, name="s")
            # swapped lists negate every value
            s2 = build_monthly_index(arts, NEG, POS, name="s")
            assert s1.months == s2.months
            np.testing.assert_allclose(s2.values, [-v for v in s1.values],
                                       atol=1e-15)
            # permuted stream gives an identical series
            perm = [arts[i] for i in rng.permutation(len(arts))]
            s3 = build_monthly_index(perm, POS, NEG, name="s")
            assert s3.months == s1.months
            assert s3.values == s1.values
            assert s3.counts == s1.counts

    def test_duplicating_articles_preserves_means(self):
        rng = np.random.default_rng(9)
        for case in range(50):
            arts = random_corpus(rng)
            s1 = build_monthly_index(arts, POS, NEG, name="s")
            s2 = build_monthly_index(arts + arts, POS, NEG, name="s")
            np.testing.assert_allclose(s2.values, s1.values, atol=1e-15)
            assert s2.counts == tuple(2 * c for c in s1.counts)

    def test_adding_positive_token_weakly_increases(self):
        arts = [art(0, "2001-01-10", "x x x gain"),
                art(1, "2001-01-11", "panic x")]
        s1 = build_monthly_index(arts, POS, NEG, name="s")
        arts2 = [art(0, "2001-01-10", "x x x gain gain"),
                 art(1, "2001-01-11", "panic x")]
        s2 = build_monthly_index(arts2, POS, NEG, name="s")
        assert s2.values[0] >= s1.values[0]


class TestCorpusIo:
    def write_corpus(self, tmp_path, records):
        p = tmp_path / "c.jsonl"
        p.write_text("\n".join(json.dumps(r) for r in records) + "\n")
        return p

    def test_tag_filter(self, tmp_path):
        p = self.write_corpus(tmp_path, [
            {"id": "1", "date": "2001-01-02", "tags": ["New York"],
             "text": "gain"},
            {"id": "2", "date": "2001-01-03", "tags": ["Boston"],
             "text": "panic"},
        ])
        arts = list(iter_corpus(p, tags=["New York", "Washington D.C."]))
        assert [a.id for a in arts] == ["1"]

    def test_no_filter_keeps_all(self, tmp_path):
        p = self.write_corpus(tmp_path, [
            {"id": "1", "date": "2001-01-02", "tags": [], "text": "x"}])
        assert len(list(iter_corpus(p))) == 1

    def test_bad_json(self, tmp_path):
        p = tmp_path / "c.jsonl"
        p.write_text("{not json\n")
        with pytest.raises(DataError, match="invalid JSON"):
            list(iter_corpus(p))

    def test_bad_date(self, tmp_path):
        p = self.write_corpus(tmp_path, [
            {"id": "1", "date": "not-a-date", "text": "x"}])
        with pytest.raises(DataError, match="bad date"):
            list(iter_corpus(p))

    def test_missing_field(self, tmp_path):
        p = self.write_corpus(tmp_path, [{"id": "1", "date": "2001-01-02"}])
        with pytest.raises(DataError, match="missing field"):
            list(iter_corpus(p))

    def test_series_csv_round_trip(self, tmp_path):
        arts = [art(0, "2001-01-10", "gain x x"),
                art(1, "2001-02-20", "panic panic x")]
        series = build_monthly_index(arts, POS, NEG, name="s")
        path = tmp_path / "s.csv"
        write_series_csv(series, path)
        back = read_series_csv(path)
        assert back.months == series.months
        assert back.values == series.values
        assert back.counts == series.counts
