"""Fixtures: a tiny offline causal LM and a handcrafted claims corpus."""

import pytest
import torch
from tokenizers import Tokenizer, models, pre_tokenizers, trainers
from transformers import GPT2Config, GPT2LMHeadModel, PreTrainedTokenizerFast

from debate_extractor.claims import ClaimItem
from debate_extractor.probe import DEFAULT_TEMPLATE

# statement stem, correct completion, wrong completion
FACT_TRIPLES = [
    ("The capital of France is", "Paris", "Berlin"),
    ("The capital of Japan is", "Tokyo", "Osaka"),
    ("The capital of Italy is", "Rome", "Milan"),
    ("Water freezes at zero degrees", "Celsius", "Fahrenheit"),
    ("The largest planet in our solar system is", "Jupiter", "Mars"),
    ("The chemical symbol for gold is", "Au", "Ag"),
    ("A triangle has", "three sides", "four sides"),
    ("The sun rises in the", "east", "west"),
    ("Spiders have", "eight legs", "six legs"),
    ("The Pacific is an", "ocean", "island"),
    ("Honey is made by", "bees", "ants"),
    ("The human heart pumps", "blood", "air"),
    ("Mount Everest is the tallest", "mountain", "river"),
    ("Penguins live mostly in the", "southern hemisphere", "northern hemisphere"),
    ("The currency of the United States is the", "dollar", "euro"),
    ("A week contains", "seven days", "nine days"),
    ("The Great Wall is located in", "China", "India"),
    ("Sound travels slower than", "light", "shadow"),
    ("An octopus has", "eight arms", "five arms"),
    ("The boiling point of water at sea level is one hundred degrees", "Celsius", "Kelvin"),
    ("Whales are", "mammals", "fish"),
    ("The Nile is a", "river", "desert"),
    ("Oxygen is a", "gas", "metal"),
    ("The piano is a musical", "instrument", "animal"),
    ("Leaves are usually", "green", "purple"),
    ("Ice is frozen", "water", "sand"),
    ("The moon orbits the", "Earth", "sun"),
    ("A square has four equal", "sides", "corners"),
]


def fact_claims():
    """56 claims: one true and one false variant per fact."""
    items = []
    for stem, right, wrong in FACT_TRIPLES:
        items.append(ClaimItem(claim=f"{stem} {right}.", gold_label=True))
        items.append(ClaimItem(claim=f"{stem} {wrong}.", gold_label=False))
    return items


@pytest.fixture(scope="session")
def claims():
    return fact_claims()


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """A word-level tokenizer plus a random-weight 5-layer GPT-2, on disk."""
    path = tmp_path_factory.mktemp("tinymodel")
    corpus = [c.claim for c in fact_claims()]
    corpus.append(DEFAULT_TEMPLATE.replace("{claim}", ""))
    corpus.append("True False yes no maybe")

    tokenizer = Tokenizer(models.WordLevel(unk_token="<unk>"))
    tokenizer.pre_tokenizer = pre_tokenizers.Whitespace()
    trainer = trainers.WordLevelTrainer(special_tokens=["<unk>", "<pad>"], vocab_size=4000)
    tokenizer.train_from_iterator(corpus, trainer)
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tokenizer, unk_token="<unk>", pad_token="<pad>"
    )
    fast.save_pretrained(path)

    torch.manual_seed(7)
    config = GPT2Config(
        vocab_size=len(fast),
        n_positions=256,
        n_embd=64,
        n_layer=5,
        n_head=4,
        bos_token_id=0,
        eos_token_id=0,
    )
    GPT2LMHeadModel(config).save_pretrained(path)
    return str(path)


class StubScorer:
    """Similarity stub: looks the modified sentence up in a fixed table."""

    def __init__(self, table, default=0.5):
        self.table = table
        self.default = default
        self.seen_pairs = []

    def similarity(self, pairs):
        self.seen_pairs.extend(pairs)
        return [self.table.get(modified, self.default) for _, modified in pairs]
