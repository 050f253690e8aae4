from pathlib import Path

import pytest

from cantor.rules import load_rule_file
from cantor.vocab import VocabularyRegistry

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def vocab_registry() -> VocabularyRegistry:
    return VocabularyRegistry.from_directory(FIXTURES / "vocab")


@pytest.fixture(scope="session")
def intermarc_rules():
    return load_rule_file(FIXTURES / "rules" / "intermarc.rules")


@pytest.fixture(scope="session")
def unimarc_rules():
    return load_rule_file(FIXTURES / "rules" / "unimarc.rules")
