import json

import pytest

from reviewrank import (
    ExchangeError,
    ExternalSource,
    GoldSource,
    Opinion,
    Polarity,
    build_ine,
    collect_opinions,
    count_evaluations,
    write_exchange,
)


class TestCollectGold:
    def test_t14_has_the_four_documented_opinions(self, dataset):
        opinions = collect_opinions(dataset, GoldSource())[("e1", "x4")]
        assert [
            (op.aspect_term, op.category, op.polarity) for op in opinions
        ] == [
            (None, "restaurant", Polarity.POSITIVE),
            (None, "restaurant", Polarity.POSITIVE),
            ("atmosphere", "ambience", Polarity.POSITIVE),
            ("food", "food", Polarity.POSITIVE),
        ]
        assert [op.sentence_index for op in opinions] == [0, 1, 2, 3]

    def test_every_review_key_present(self, dataset):
        grouped = collect_opinions(dataset, GoldSource())
        assert set(grouped) == {review.key() for review in dataset.reviews}

    def test_emission_order_is_stable(self, dataset):
        grouped = collect_opinions(dataset, GoldSource())
        for opinions in grouped.values():
            indices = [op.sentence_index for op in opinions]
            assert indices == sorted(indices)
        # deterministic across calls
        assert grouped == collect_opinions(dataset, GoldSource())


class TestExternalSource:
    def test_empty_file_gives_empty_lists(self, dataset, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        grouped = collect_opinions(dataset, ExternalSource(path))
        assert set(grouped) == {review.key() for review in dataset.reviews}
        assert all(opinions == [] for opinions in grouped.values())

    def test_gold_round_trip_identity(self, dataset, tmp_path):
        gold = collect_opinions(dataset, GoldSource())
        path = tmp_path / "gold.jsonl"
        write_exchange(
            [op for key in sorted(gold) for op in gold[key]], path
        )
        external = collect_opinions(dataset, ExternalSource(path))
        assert external == gold

    def test_unknown_review_reports_line_number(self, dataset, tmp_path):
        path = tmp_path / "bad.jsonl"
        record = {
            "expert": "e9",
            "alternative": "x1",
            "sentence_index": 0,
            "aspect_term": None,
            "category": "food",
            "polarity": "positive",
        }
        path.write_text(json.dumps(record) + "\n", encoding="utf-8")
        with pytest.raises(ExchangeError, match=":1:"):
            collect_opinions(dataset, ExternalSource(path))

    def test_unknown_category_rejected(self, dataset, tmp_path):
        path = tmp_path / "bad.jsonl"
        record = {
            "expert": "e1",
            "alternative": "x1",
            "sentence_index": 0,
            "aspect_term": None,
            "category": "parking",
            "polarity": "positive",
        }
        path.write_text(json.dumps(record) + "\n", encoding="utf-8")
        with pytest.raises(ExchangeError, match="parking"):
            collect_opinions(dataset, ExternalSource(path))

    def test_null_aspect_term_means_implicit(self, dataset, tmp_path):
        path = tmp_path / "one.jsonl"
        record = {
            "expert": "e1",
            "alternative": "x1",
            "sentence_index": 0,
            "aspect_term": None,
            "category": "food",
            "polarity": "negative",
        }
        path.write_text(json.dumps(record) + "\n", encoding="utf-8")
        grouped = collect_opinions(dataset, ExternalSource(path))
        (opinion,) = grouped[("e1", "x1")]
        assert opinion.aspect_term is None


class TestCountEvaluations:
    def test_combined_counts_match_reference_totals(self, dataset, fixtures_dir):
        opinions = collect_opinions(
            dataset, ExternalSource(fixtures_dir / "exchange" / "extracted.jsonl")
        )
        counts = count_evaluations(opinions, build_ine(dataset), dataset.criterion_ids)
        assert counts == {
            "restaurant": 83,
            "food": 105,
            "service": 34,
            "drinks": 8,
            "ambience": 30,
            "location": 11,
        }

    def test_text_only_counts(self, dataset, fixtures_dir):
        opinions = collect_opinions(
            dataset, ExternalSource(fixtures_dir / "exchange" / "extracted.jsonl")
        )
        counts = count_evaluations(opinions, None, dataset.criterion_ids)
        assert counts == {
            "restaurant": 59,
            "food": 90,
            "service": 19,
            "drinks": 8,
            "ambience": 30,
            "location": 11,
        }

    def test_numeric_only_counts(self, dataset):
        counts = count_evaluations(None, build_ine(dataset), dataset.criterion_ids)
        assert counts == {
            "restaurant": 24,
            "food": 15,
            "service": 15,
            "drinks": 0,
            "ambience": 0,
            "location": 0,
        }

    def test_counts_are_additive(self, dataset, fixtures_dir):
        opinions = collect_opinions(
            dataset, ExternalSource(fixtures_dir / "exchange" / "extracted.jsonl")
        )
        ine = build_ine(dataset)
        combined = count_evaluations(opinions, ine, dataset.criterion_ids)
        text = count_evaluations(opinions, None, dataset.criterion_ids)
        numeric = count_evaluations(None, ine, dataset.criterion_ids)
        assert combined == {
            crit: text[crit] + numeric[crit] for crit in dataset.criterion_ids
        }

    def test_duplicate_opinions_count_twice(self, dataset):
        opinion = Opinion("e1", "x1", 0, "food", "food", Polarity.POSITIVE)
        counts = count_evaluations(
            {("e1", "x1"): [opinion, opinion]}, None, dataset.criterion_ids
        )
        assert counts["food"] == 2


class TestCategoryMappingOnExchange:
    def test_external_labels_map_to_criteria(self, dataset, tmp_path):
        path = tmp_path / "raw.jsonl"
        record = {
            "expert": "e1",
            "alternative": "x1",
            "sentence_index": 0,
            "aspect_term": "bream",
            "category": "FOOD#QUALITY",
            "polarity": "positive",
        }
        path.write_text(json.dumps(record) + "\n", encoding="utf-8")
        with pytest.raises(ExchangeError):
            collect_opinions(dataset, ExternalSource(path))
        source = ExternalSource(path, {"FOOD#QUALITY": "food"})
        (opinion,) = collect_opinions(dataset, source)[("e1", "x1")]
        assert opinion.category == "food"
