import json

import pytest

from reviewrank import (
    CategoryMapping,
    SchemaError,
    CompletenessError,
    DuplicateReviewError,
    MappingError,
    Opinion,
    Polarity,
    RangeError,
    Review,
    build_dataset,
    build_ine,
    load_dataset,
    load_matrix_fixture,
    map_categories,
)
from reviewrank.ingestion import DEFAULT_SEMEVAL_MAPPING


def write_corpus(tmp_path, doc, name="corpus.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def minimal_doc(**overrides):
    doc = {
        "experts": ["e1"],
        "alternatives": ["x1"],
        "criteria": ["food"],
        "tau": 2,
        "reviews": [
            {
                "expert": "e1",
                "alternative": "x1",
                "title": "Quick bite.",
                "body": "The food was great.",
                "ratings": {"food": 4},
            }
        ],
    }
    doc.update(overrides)
    return doc


class TestLoadDataset:
    def test_bundled_fixture_has_24_reviews(self, dataset):
        assert len(dataset.reviews) == 24
        assert len(dataset.experts) == 6
        assert len(dataset.alternatives) == 4
        assert dataset.scale.tau == 2

    def test_minimal_corpus(self, tmp_path):
        dataset = load_dataset(write_corpus(tmp_path, minimal_doc()))
        assert len(dataset.reviews) == 1
        assert dataset.reviews[0].ratings == {"food": 4}

    def test_rating_level_out_of_scale_range(self, tmp_path):
        doc = minimal_doc()
        doc["reviews"][0]["ratings"] = {"food": 7}
        with pytest.raises(RangeError, match="7"):
            load_dataset(write_corpus(tmp_path, doc))

    def test_missing_pair_in_complete_mode_lists_pairs(self, tmp_path):
        doc = minimal_doc(alternatives=["x1", "x2"])
        with pytest.raises(CompletenessError, match=r"\(e1, x2\)"):
            load_dataset(write_corpus(tmp_path, doc))

    def test_lenient_mode_warns_instead(self, tmp_path):
        doc = minimal_doc(alternatives=["x1", "x2"])
        with pytest.warns(UserWarning, match="no review"):
            dataset = load_dataset(write_corpus(tmp_path, doc), mode="lenient")
        assert len(dataset.reviews) == 1

    def test_duplicate_review_rejected(self, tmp_path):
        doc = minimal_doc()
        doc["reviews"].append(dict(doc["reviews"][0]))
        with pytest.raises(DuplicateReviewError):
            load_dataset(write_corpus(tmp_path, doc))

    def test_null_rating_means_absent(self, tmp_path):
        doc = minimal_doc()
        doc["reviews"][0]["ratings"] = {"food": None}
        dataset = load_dataset(write_corpus(tmp_path, doc))
        assert dataset.reviews[0].ratings == {}

    def test_load_is_idempotent(self, tmp_path, fixtures_dir):
        path = fixtures_dir / "corpus" / "restaurants.json"
        assert load_dataset(path) == load_dataset(path)

    def test_gold_opinion_sentence_index_checked(self, tmp_path):
        doc = minimal_doc()
        doc["gold_opinions"] = [
            {
                "expert": "e1",
                "alternative": "x1",
                "sentence_index": 9,
                "aspect_term": "food",
                "category": "food",
                "polarity": "positive",
            }
        ]
        with pytest.raises(Exception, match="sentence_index"):
            load_dataset(write_corpus(tmp_path, doc))


class TestMapCategories:
    def raw(self, label):
        return Opinion("e1", "x1", 0, "term", label, Polarity.POSITIVE)

    def test_food_quality_collapses_to_food(self):
        mapped = map_categories([self.raw("FOOD#QUALITY")], CategoryMapping())
        assert mapped[0].category == "food"

    def test_restaurant_general_collapses_to_restaurant(self):
        mapped = map_categories([self.raw("RESTAURANT#GENERAL")], CategoryMapping())
        assert mapped[0].category == "restaurant"

    def test_default_table_covers_the_public_restaurant_label_set(self):
        # Oracle: enumerate the full ENTITY#ATTRIBUTE label set of the public
        # restaurant-domain annotation schema and require total coverage.
        entities_attributes = {
            "RESTAURANT": ("GENERAL", "PRICES", "MISCELLANEOUS"),
            "FOOD": ("PRICES", "QUALITY", "STYLE_OPTIONS"),
            "DRINKS": ("PRICES", "QUALITY", "STYLE_OPTIONS"),
            "AMBIENCE": ("GENERAL",),
            "SERVICE": ("GENERAL",),
            "LOCATION": ("GENERAL",),
        }
        labels = {
            f"{entity}#{attribute}"
            for entity, attributes in entities_attributes.items()
            for attribute in attributes
        }
        assert labels == set(DEFAULT_SEMEVAL_MAPPING)
        mapped = map_categories(
            [self.raw(label) for label in sorted(labels)], CategoryMapping()
        )
        for raw_label, opinion in zip(sorted(labels), mapped):
            assert opinion.category == raw_label.split("#")[0].lower()

    def test_empty_list(self):
        assert map_categories([], CategoryMapping()) == []

    def test_unmapped_label_names_the_label(self):
        with pytest.raises(MappingError, match="HOTEL#GENERAL"):
            map_categories([self.raw("HOTEL#GENERAL")], CategoryMapping())

    def test_multiplicity_preserved(self):
        mapped = map_categories(
            [self.raw("FOOD#QUALITY"), self.raw("FOOD#QUALITY")], CategoryMapping()
        )
        assert len(mapped) == 2
        assert mapped[0] == mapped[1]


class TestBuildIne:
    def test_e1_restaurant_column(self, dataset):
        ine = build_ine(dataset)["e1"]
        assert ine.col_values("restaurant") == (1.0, 2.0, 1.0, 1.0)
        for criterion in ("food", "service", "drinks", "ambience", "location"):
            assert ine.col_values(criterion) == (None, None, None, None)

    def test_e6_partial_rows(self, dataset):
        ine = build_ine(dataset)["e6"]
        assert ine.row_values("x1") == (1.0, 1.0, 1.0, None, None, None)
        assert ine.row_values("x2") == (0.0, None, None, None, None, None)

    def test_matches_reference_matrices(self, dataset, ine_matrices):
        assert build_ine(dataset) == ine_matrices

    def test_review_without_ratings_gives_all_na_row(self):
        reviews = [Review("e1", "x1", "T.", "Body sentence.")]
        dataset = build_dataset(["e1"], ["x1"], ["food"], 2, reviews)
        ine = build_ine(dataset)["e1"]
        assert ine.row_values("x1") == (None,)

    def test_order_independent(self, dataset):
        shuffled = build_dataset(
            dataset.experts,
            dataset.alternatives,
            [c.id for c in dataset.criteria],
            dataset.scale.tau,
            tuple(reversed(dataset.reviews)),
            dataset.gold_opinions,
        )
        assert build_ine(shuffled) == build_ine(dataset)

    def test_non_na_counts_match_rating_attention(self, dataset):
        ine = build_ine(dataset)
        counts = {
            criterion: sum(m.present_count(criterion) for m in ine.values())
            for criterion in dataset.criterion_ids
        }
        assert counts == {
            "restaurant": 24,
            "food": 15,
            "service": 15,
            "drinks": 0,
            "ambience": 0,
            "location": 0,
        }


class TestFixtureLoaders:
    def test_textual_matrix_fixture_cells(self, ite_matrices, ine_matrices):
        assert ite_matrices["e1"].get("x1", "location") == 2.0
        assert ite_matrices["e1"].get("x1", "restaurant") == 2.0
        assert ite_matrices["e1"].get("x1", "food") is None
        assert ine_matrices["e1"].get("x1", "food") is None
        assert ine_matrices["e1"].get("x1", "restaurant") == 1.0

    def test_counts_fixture(self, combined_counts):
        assert combined_counts == {
            "restaurant": 83,
            "food": 105,
            "service": 34,
            "drinks": 8,
            "ambience": 30,
            "location": 11,
        }

    def test_unknown_criterion_column_is_schema_error(self, tmp_path, scale):
        path = tmp_path / "bad.csv"
        path.write_text(",food,price\nx1,1,2\n", encoding="utf-8")
        with pytest.raises(SchemaError, match="price"):
            load_matrix_fixture(path, ("food",), scale)

    def test_all_na_fixture_loads_empty(self, tmp_path, scale):
        path = tmp_path / "na.csv"
        path.write_text(",food,service\nx1,NA,NA\nx2,NA,NA\n", encoding="utf-8")
        matrix = load_matrix_fixture(path, ("food", "service"), scale)
        assert all(v is None for row in matrix.to_grid() for v in row)


class TestPreSegmentedReviews:
    def test_sentences_array_replaces_body_segmentation(self, tmp_path):
        doc = minimal_doc()
        doc["reviews"][0].pop("body")
        doc["reviews"][0]["sentences"] = ["First thought.", "Second thought."]
        dataset = load_dataset(write_corpus(tmp_path, doc))
        review = dataset.reviews[0]
        assert review.sentence_count == 3  # title + two provided sentences
        assert review.sentences[0] == "Quick bite."
