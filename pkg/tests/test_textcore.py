"""Tests for tokenization, substitution and POS handling."""

import random

import pytest

from alterfactual.errors import SubstitutionError
from alterfactual.textcore import (
    Document,
    PosTagger,
    Substitution,
    Token,
    Tokenizer,
    apply_substitutions,
    delete_tokens,
    detokenize,
    pos_compatible,
    tokenize,
)


class TestTokenize:
    def test_empty_input_yields_zero_tokens(self):
        doc = tokenize("")
        assert len(doc.tokens) == 0
        assert doc.sentence_bounds == ()

    def test_whitespace_split(self):
        doc = tokenize("today is monday")
        assert doc.surfaces() == ["today", "is", "monday"]

    def test_hand_tokenized_sentence(self):
        # Hand tokenization: 7 words plus the final period = 8 tokens.
        doc = tokenize("Impossible to understand the stupidity of someone.")
        assert len(doc.tokens) == 8
        assert doc.tokens[-1].surface == "."
        assert doc.surfaces()[:3] == ["Impossible", "to", "understand"]

    def test_contractions_stay_single_tokens(self):
        doc = tokenize("It isn't bad, don't you think?")
        assert "isn't" in doc.surfaces()
        assert "don't" in doc.surfaces()

    def test_punctuation_separated(self):
        doc = tokenize("good,bad")
        assert doc.surfaces() == ["good", ",", "bad"]
        assert doc.tokens[1].is_punct

    def test_normalized_is_lowercased_surface(self):
        doc = tokenize("Republicans AND democrats")
        for tok in doc.tokens:
            assert tok.normalized == tok.surface.lower()

    def test_sentence_bounds_split_on_terminal_punct(self):
        doc = tokenize("It is fine. It is not!")
        assert doc.surfaces() == ["It", "is", "fine", ".", "It", "is", "not", "!"]
        assert doc.sentence_bounds == ((0, 4), (4, 8))

    def test_sentence_bounds_partition_tokens(self):
        doc = tokenize("One. Two!! Three? And a trailing clause")
        covered = []
        for start, end in doc.sentence_bounds:
            assert end > start
            covered.extend(range(start, end))
        assert covered == list(range(len(doc.tokens)))

    def test_stopword_and_pos_annotation(self):
        tagger = PosTagger({"monday": "NOUN", "run": "VERB"})
        tok = Tokenizer(stopwords={"the", "is"}, tagger=tagger)
        doc = tok.tokenize("The run is on Monday .")
        assert [t.is_stopword for t in doc.tokens] == [True, False, True, False, False, False]
        assert doc.tokens[1].pos == "VERB"
        assert doc.tokens[4].pos == "NOUN"
        assert doc.tokens[5].pos == "OTHER" and doc.tokens[5].is_punct


class TestDetokenize:
    def test_round_trip_punctuation_free(self):
        for text in ["today is monday", "she left early", "a b c d"]:
            doc = tokenize(text)
            assert detokenize(doc.surfaces()) == " ".join(text.split())

    def test_round_trip_random_word_sentences(self):
        rng = random.Random(7)
        words = ["alpha", "beta", "gamma", "delta", "isn't", "don't"]
        for _ in range(50):
            text = " ".join(rng.choice(words) for _ in range(rng.randint(1, 9)))
            assert detokenize(tokenize(text).surfaces()) == text

    def test_punctuation_reattaches(self):
        doc = tokenize("It is fine, mostly.")
        assert detokenize(doc.surfaces()) == "It is fine, mostly."


class TestApplySubstitutions:
    def test_empty_batch_is_identity(self):
        doc = tokenize("good movie")
        out = apply_substitutions(doc, [])
        assert out.surfaces() == doc.surfaces()
        assert out.raw == detokenize(doc.surfaces())

    def test_final_adjective_substitution(self):
        doc = tokenize("Your comment makes no sense and is incoherent")
        sub = Substitution(position=7, original="incoherent", replacement="coherent")
        out = apply_substitutions(doc, [sub])
        assert out.raw == "Your comment makes no sense and is coherent"

    def test_casing_inherited(self):
        doc = tokenize("He left")
        out = apply_substitutions(doc, [Substitution(0, "He", "she")])
        assert out.raw == "She left"

    def test_untouched_tokens_identical(self):
        doc = tokenize("alpha beta gamma")
        out = apply_substitutions(doc, [Substitution(1, "beta", "zeta")])
        assert out.tokens[0] == doc.tokens[0]
        assert out.tokens[2] == doc.tokens[2]

    def test_out_of_range_rejects_whole_batch(self):
        doc = tokenize("alpha beta")
        subs = [Substitution(0, "alpha", "omega"), Substitution(9, "beta", "zeta")]
        with pytest.raises(SubstitutionError):
            apply_substitutions(doc, subs)

    def test_duplicate_positions_rejected(self):
        doc = tokenize("alpha beta")
        subs = [Substitution(0, "alpha", "omega"), Substitution(0, "alpha", "iota")]
        with pytest.raises(SubstitutionError):
            apply_substitutions(doc, subs)

    def test_mismatched_original_rejected(self):
        doc = tokenize("alpha beta")
        with pytest.raises(SubstitutionError):
            apply_substitutions(doc, [Substitution(0, "gamma", "omega")])

    def test_multiword_replacement_rejected(self):
        doc = tokenize("alpha beta")
        with pytest.raises(SubstitutionError):
            apply_substitutions(doc, [Substitution(0, "alpha", "two words")])

    def test_order_insensitive_for_disjoint_positions(self):
        doc = tokenize("one two three four")
        subs = [Substitution(0, "one", "zero"), Substitution(2, "three", "nine")]
        a = apply_substitutions(doc, subs)
        b = apply_substitutions(doc, list(reversed(subs)))
        assert a == b

    def test_token_count_preserved(self):
        rng = random.Random(3)
        words = ["red", "blue", "green", "plain", "bright"]
        for _ in range(25):
            text = " ".join(rng.choice(words) for _ in range(rng.randint(2, 8)))
            doc = tokenize(text)
            pos = rng.randrange(len(doc.tokens))
            sub = Substitution(pos, doc.tokens[pos].surface, "swapped")
            out = apply_substitutions(doc, [sub])
            assert len(out.tokens) == len(doc.tokens)

    def test_replacement_reannotated(self):
        tagger = PosTagger({"ugly": "ADJ"})
        tok = Tokenizer(stopwords={"ugly"}, tagger=tagger)
        doc = tok.tokenize("pretty day")
        out = apply_substitutions(doc, [Substitution(0, "pretty", "ugly")], tokenizer=tok)
        assert out.tokens[0].pos == "ADJ"
        assert out.tokens[0].is_stopword


class TestDeleteTokens:
    def test_delete_middle_token(self):
        doc = tokenize("one two three")
        out = delete_tokens(doc, [1])
        assert out.surfaces() == ["one", "three"]
        assert out.raw == "one three"

    def test_bounds_recomputed(self):
        doc = tokenize("Good. Bad.")
        out = delete_tokens(doc, [1])  # drop the first period
        assert out.sentence_bounds == ((0, 3),)


class TestPosCompatible:
    tagger = PosTagger({"pretty": "ADJ", "ugly": "ADJ", "monday": "NOUN", "run": "VERB"})

    def tok(self, surface):
        return Tokenizer(tagger=self.tagger).make_token(surface)

    def test_same_tag(self):
        assert pos_compatible(self.tok("pretty"), "ugly", self.tagger)

    def test_different_tags(self):
        assert not pos_compatible(self.tok("Monday"), "run", self.tagger)

    def test_unknown_is_permissive(self):
        assert pos_compatible(self.tok("xqzt"), "flower", self.tagger)
        assert pos_compatible(self.tok("Monday"), "xqzt", self.tagger)


class TestSubstitutionInvariants:
    def test_original_must_differ_from_replacement(self):
        with pytest.raises(ValueError):
            Substitution(0, "Same", "same")

    def test_negative_position_rejected(self):
        with pytest.raises(ValueError):
            Substitution(-1, "a", "b")
