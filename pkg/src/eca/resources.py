"""Paths to bundled package data (ontology, stopwords, offline KB fixtures)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_path(*parts: str) -> Path:
    return Path(str(resources.files("eca").joinpath("data", *parts)))


def default_ontology_path() -> Path:
    return data_path("ontology.json")


def default_fixture_dir() -> Path:
    return data_path("fixtures", "kb")


def fixture_corpus_path() -> Path:
    return data_path("fixtures", "corpus_small.jsonl")


def keyphrase_sample_path() -> Path:
    return data_path("fixtures", "keyphrase_sample.txt")


def stopwords_path(language: str) -> Path | None:
    path = data_path("stopwords", f"{language}.txt")
    return path if path.exists() else None
