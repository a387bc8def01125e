"""Tests for double-negative detection and the introduction veto."""

import random

import pytest

from alterfactual.errors import StructuralError
from alterfactual.negation import (
    NegationConfig,
    detect_double_negative,
    introduces_double_negative,
    sentence_double_flags,
)
from alterfactual.oracles import LexiconNegativity
from alterfactual.textcore import tokenize


LEXICON = frozenset({"nothing", "not", "isn't", "don't", "never", "no"})


@pytest.fixture
def oracle():
    return LexiconNegativity(LEXICON)


def exhaustive_is_double(sentence: str, window: int) -> bool:
    """Independent oracle: all trigger positions, O(h^2) pairwise window check."""
    tokens = tokenize(sentence).tokens
    positions = [i for i, t in enumerate(tokens) if not t.is_punct and t.normalized in LEXICON]
    return any(
        abs(a - b) <= window
        for i, a in enumerate(positions)
        for b in positions[i + 1 :]
    )


def random_sentence(rng) -> str:
    vocab = ["i", "like", "cats", "not", "don't", "never", "fine", "is", "it", "no",
             "good", "really", "nothing", "bad", "isn't"]
    return " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 12)))


class TestDetect:
    def test_empty_sentence(self, oracle):
        report = detect_double_negative("", NegationConfig(), oracle)
        assert report.negatives == []
        assert report.is_double is False

    def test_no_triggers(self, oracle):
        report = detect_double_negative("I like cats", NegationConfig(), oracle)
        assert report.negatives == []
        assert not report.is_double

    def test_adjacent_triggers_within_window(self, oracle):
        report = detect_double_negative("I don't not like it", NegationConfig(window=3), oracle)
        assert [h.position for h in report.negatives] == [1, 2]
        assert report.is_double

    def test_positions_are_original_not_shifted(self, oracle):
        report = detect_double_negative("no one said nothing", NegationConfig(), oracle)
        assert [h.position for h in report.negatives] == [0, 3]
        assert report.is_double  # distance 3 <= window 3

    def test_far_apart_triggers_are_not_double(self, oracle):
        text = "not a b c d e f never"
        report = detect_double_negative(text, NegationConfig(window=3), oracle)
        assert len(report.negatives) == 2
        assert not report.is_double

    def test_single_trigger_is_not_double(self, oracle):
        report = detect_double_negative("It isn't fine", NegationConfig(), oracle)
        assert len(report.negatives) == 1
        assert not report.is_double

    def test_repeated_calls_agree(self, oracle):
        cfg = NegationConfig()
        a = detect_double_negative("no never not", cfg, oracle)
        b = detect_double_negative("no never not", cfg, oracle)
        assert a == b

    def test_matches_exhaustive_pairwise_oracle(self, oracle):
        rng = random.Random(123)
        for _ in range(300):
            text = random_sentence(rng)
            window = rng.randint(1, 5)
            got = detect_double_negative(text, NegationConfig(window=window), oracle)
            assert got.is_double == exhaustive_is_double(text, window), (text, window)

    def test_query_count_at_most_hits_plus_one(self):
        class CountingOracle(LexiconNegativity):
            def __init__(self):
                super().__init__(LEXICON)
                self.calls = 0

            def most_negative(self, text):
                self.calls += 1
                return super().most_negative(text)

        counting = CountingOracle()
        report = detect_double_negative("no never not fine", NegationConfig(), counting)
        assert counting.calls <= len(report.negatives) + 1

    def test_window_monotonicity(self, oracle):
        rng = random.Random(7)
        for _ in range(200):
            text = random_sentence(rng)
            previous = False
            for window in (1, 2, 3, 5, 8):
                now = detect_double_negative(text, NegationConfig(window=window), oracle).is_double
                assert now or not previous  # enlarging the window never flips true -> false
                previous = now


class TestIntroduces:
    def test_single_negation_is_not_introduced_double(self, oracle):
        original = tokenize("It is fine.")
        perturbed = tokenize("It isn't fine.")
        assert not introduces_double_negative(original, perturbed, NegationConfig(), oracle)

    def test_original_double_excuses_perturbed(self, oracle):
        # both triggers within the window in the original sentence
        original = tokenize("He is not unkind never mind.")
        perturbed = tokenize("He is not unkind never matter.")
        flags = sentence_double_flags(original, NegationConfig(), oracle)
        assert flags == [True]
        assert not introduces_double_negative(original, perturbed, NegationConfig(), oracle)

    def test_new_double_within_window_detected(self, oracle):
        # substituting "and" -> "never" puts two triggers at distance 2 <= window
        original = tokenize("It is not bad and fine.")
        perturbed = tokenize("It is not bad never fine.")
        assert introduces_double_negative(original, perturbed, NegationConfig(window=3), oracle)

    def test_new_far_apart_trigger_is_allowed(self, oracle):
        # distance between triggers is 5 > window 3: two negatives, but not a double
        original = tokenize("It is not bad and it is rather good.")
        perturbed = tokenize("It is not bad and it is not good.")
        assert not introduces_double_negative(original, perturbed, NegationConfig(window=3), oracle)

    def test_sentence_count_mismatch_is_structural_error(self, oracle):
        original = tokenize("One sentence only")
        perturbed = tokenize("Two now. Yes.")
        with pytest.raises(StructuralError):
            introduces_double_negative(original, perturbed, NegationConfig(), oracle)

    def test_precomputed_flags_shortcut_agrees(self, oracle):
        cfg = NegationConfig()
        original = tokenize("It is not bad. It is good.")
        perturbed = tokenize("It is not bad. It is not good.")
        flags = sentence_double_flags(original, cfg, oracle)
        assert introduces_double_negative(original, perturbed, cfg, oracle) == \
            introduces_double_negative(original, perturbed, cfg, oracle, original_flags=flags)


class TestConfig:
    def test_defaults(self):
        cfg = NegationConfig()
        assert cfg.n_t == 0.15
        assert cfg.window == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            NegationConfig(n_t=0.0)
        with pytest.raises(ValueError):
            NegationConfig(n_t=1.5)
        with pytest.raises(ValueError):
            NegationConfig(window=0)
