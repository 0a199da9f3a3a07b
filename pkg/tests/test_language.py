"""Tests for templates, NLG, rule NLU, channel noise and language metrics."""

from typing import List

import numpy as np
import pytest
from nltk.translate.bleu_score import sentence_bleu

from parley.src.core.acts.models import THIS_SLOT, Frame, Intent, Role
from parley.src.core.acts.mr import mr_to_frames
from parley.src.core.errors import (
    MissingReferenceError,
    TaggingError,
    TemplateError,
    UndefinedMetricError,
)
from parley.src.core.game.agents import realizable_mrs
from parley.src.core.language import (
    Channel,
    ChannelMode,
    NoiseConfig,
    NoiseModel,
    RuleNLU,
    TemplateStore,
    bleu,
    bleu_max,
    evaluate_nlu,
    frames_to_tags,
    generate,
    leave_one_out_bleu,
    lexicalize,
    score_predictions,
)
from parley.src.core.language.noise import default_confusion_groups

PHONE = "01223 323737"

PROVIDER_TURNS = [
    [Frame(Intent.WELCOMEMSG)],
    [Frame.request("area")],
    [Frame.of(Intent.OFFER, name="pizza hut city centre")],
    [Frame.of(Intent.INFORM, phone=PHONE)],
    [Frame.of(Intent.INFORM, addr="regent street city centre")],
    [Frame(Intent.SELECT, (("food", "italian"), ("food", "thai")))],
    [
        Frame.of(Intent.INFORM, food="italian"),
        Frame.of(Intent.INFORM, pricerange="cheap"),
        Frame.of(Intent.OFFER, name="da vinci pizzeria"),
    ],
    [Frame(Intent.BYE)],
]

SEEKER_TURNS = [
    [Frame(Intent.HELLO)],
    [Frame.of(Intent.INFORM, food="italian")],
    [Frame.of(Intent.INFORM, pricerange="cheap")],
    [Frame.of(Intent.INFORM, area="north")],
    [Frame.of(Intent.INFORM, food="dontcare")],
    [Frame.of(Intent.INFORM, this="dontcare")],
    [Frame.request("addr")],
    [Frame.request("phone")],
    [Frame(Intent.BYE)],
]


def only(**probabilities) -> NoiseConfig:
    """A noise config with every error class off except the given ones."""
    values = {
        "p_frame_drop": 0.0,
        "p_slot_confusion": 0.0,
        "p_value_corruption": 0.0,
        "p_value_truncation": 0.0,
    }
    values.update(probabilities)
    return NoiseConfig(**values)


def pick(options, rng: np.random.Generator) -> str:
    return options[int(rng.integers(len(options)))]


def fill_mr(mr: str, role: Role, resources, vocabulary, rng: np.random.Generator) -> List[Frame]:
    """Lexicalize a delexicalized MR the way the role's realisation would: provider values from one item."""
    domain = resources.domain
    item = pick(resources.db.items, rng)
    frames = []
    for frame in mr_to_frames(mr):
        if frame.intent is Intent.REQUEST:
            frames.append(frame)
            continue
        if frame.intent is Intent.SELECT:
            options = domain.informable_slots[frame.args[0][0]]
            chosen = rng.choice(len(options), size=len(frame.args), replace=False)
            args = [(slot, options[int(index)]) for (slot, _), index in zip(frame.args, chosen)]
            frames.append(Frame(frame.intent, tuple(args)))
            continue
        args = []
        for slot, _ in frame.args:
            informable = domain.informable_slots.get(slot)
            if slot == THIS_SLOT:
                value = domain.dontcare_token
            elif informable is not None and (role is Role.SEEKER or frame.intent is Intent.EXPL_CONF):
                value = pick(informable + [domain.dontcare_token], rng)
            elif role is Role.SEEKER:
                value = pick(vocabulary[slot], rng)
            else:
                value = item[slot]
            args.append((slot, value))
        frames.append(Frame(frame.intent, tuple(args)))
    return frames


class TestTemplateStore:
    def test_bundled_stores(self, provider_store, seeker_store):
        assert provider_store.role is Role.PROVIDER
        assert "act_welcomemsg" in provider_store
        assert "act_inform <phone>" in provider_store
        assert len(seeker_store.templates("act_inform <food>")) == 2

    def test_rejects_tag_not_in_mr(self):
        store = TemplateStore(Role.PROVIDER, {})
        with pytest.raises(TemplateError):
            store.add("act_inform <food>", "it is in the <area> part of town")

    def test_rejects_malformed_mr(self):
        store = TemplateStore(Role.PROVIDER, {})
        with pytest.raises(TemplateError):
            store.add("inform food", "they serve <food> food")

    def test_templates_are_normalized(self):
        store = TemplateStore(Role.SEEKER, {"act_bye": ["  Good   BYE "]})
        assert store.templates("act_bye") == ["good bye"]

    def test_missing(self, provider_store):
        assert provider_store.missing(["act_bye", "act_reqmore act_bye"]) == ["act_reqmore act_bye"]

    def test_load_reports_line(self, tmp_path):
        path = tmp_path / "seeker.tsv"
        path.write_text("# comment\nact_bye\tgood bye\nact_hello hello\n", encoding="utf-8")
        with pytest.raises(TemplateError, match="line 3"):
            TemplateStore.load(path, Role.SEEKER)

    def test_save_and_reload(self, seeker_store, tmp_path):
        path = tmp_path / "seeker.tsv"
        seeker_store.save(path)
        assert TemplateStore.load(path, Role.SEEKER).items() == seeker_store.items()


class TestNLG:
    def test_lexicalize_repeated_tags_in_order(self):
        frames = [Frame(Intent.SELECT, (("food", "italian"), ("food", "thai")))]
        text = lexicalize("would you like <food> or <food> food ?", frames)
        assert text == "would you like italian or thai food ?"

    def test_lexicalize_dontcare_surface(self):
        assert lexicalize("<food> food", [Frame.of(Intent.INFORM, food="dontcare")]) == "any food"

    def test_generate_single_template(self, provider_store):
        utterance = generate(
            provider_store, [Frame.of(Intent.INFORM, phone=PHONE)], np.random.default_rng(0), 4
        )
        assert utterance.text == f"the phone number is {PHONE} ."
        assert utterance.speaker is Role.PROVIDER
        assert utterance.turn_index == 4

    def test_generate_picks_among_templates(self, seeker_store):
        frames = [Frame.of(Intent.INFORM, food="thai")]
        rng = np.random.default_rng(3)
        texts = {generate(seeker_store, frames, rng).text for _ in range(40)}
        assert texts == {"thai food", "i want thai food"}

    def test_generate_empty(self, seeker_store):
        utterance = generate(seeker_store, [], np.random.default_rng(0))
        assert utterance.is_empty

    def test_coverage_miss_falls_back_to_generic(self, provider_store):
        frames = [Frame(Intent.REQMORE), Frame(Intent.BYE)]
        utterance = generate(provider_store, frames, np.random.default_rng(0))
        assert utterance.text == "reqmore() ; bye()"


class TestRuleNLU:
    def test_longest_literal_template_wins(self, seeker_store):
        nlu = RuleNLU(seeker_store)
        assert nlu.understand("i want italian food") == [Frame.of(Intent.INFORM, food="italian")]
        assert nlu.understand("italian food") == [Frame.of(Intent.INFORM, food="italian")]

    def test_normalizes_input(self, seeker_store):
        nlu = RuleNLU(seeker_store)
        assert nlu.understand("  What is the PHONE   number ") == [Frame.request("phone")]

    def test_dontcare_surface(self, seeker_store):
        nlu = RuleNLU(seeker_store)
        assert nlu.understand("any food") == [Frame.of(Intent.INFORM, food="dontcare")]
        assert nlu.understand("i do not care") == [Frame.of(Intent.INFORM, this="dontcare")]

    def test_unknown_text(self, seeker_store):
        nlu = RuleNLU(seeker_store)
        assert nlu.understand("colourless green ideas sleep furiously") == []
        assert nlu.understand("") == []

    def test_generic_rendering_round_trips(self, provider_store):
        nlu = RuleNLU(provider_store)
        assert nlu.understand("reqmore() ; bye()") == [Frame(Intent.REQMORE), Frame(Intent.BYE)]
        assert nlu.understand("request(addr, phone)") == [
            Frame(Intent.REQUEST, (("requested", "addr"), ("requested", "phone")))
        ]
        assert nlu.understand("inform(food=italian, area=north)") == [
            Frame.of(Intent.INFORM, food="italian", area="north")
        ]


class TestChannel:
    @pytest.mark.parametrize("speaker, turns", [(Role.PROVIDER, PROVIDER_TURNS), (Role.SEEKER, SEEKER_TURNS)])
    def test_lossless_language_round_trip(self, stores, domain, speaker, turns):
        channel = Channel(ChannelMode.LANGUAGE, stores, NoiseConfig.lossless(), domain=domain)
        rng = np.random.default_rng(11)
        for frames in turns:
            delivery = channel.deliver(frames, speaker, rng, rng)
            assert delivery.understood == frames, delivery.utterance.text

    def test_random_realizable_frames_round_trip(self, resources):
        vocabulary = resources.db.vocabulary()
        mrs = {role: realizable_mrs(role, resources.spaces[role], resources.domain) for role in Role}
        nlus = {role: RuleNLU(resources.stores[role], resources.domain.dontcare_token) for role in Role}
        rng = np.random.default_rng(2024)
        failures = []
        for _ in range(10_000):
            role = Role.SEEKER if rng.random() < 0.5 else Role.PROVIDER
            frames = fill_mr(pick(mrs[role], rng), role, resources, vocabulary, rng)
            utterance = generate(resources.stores[role], frames, rng, dontcare_token=resources.domain.dontcare_token)
            if nlus[role].understand(utterance) != frames:
                failures.append((role.value, frames, utterance.text))
        assert failures == [], failures[:5]

    def test_acts_mode_bypasses_language(self, stores, domain):
        channel = Channel(ChannelMode.ACTS, stores, NoiseConfig.uniform(1.0), domain=domain)
        frames = [Frame.of(Intent.INFORM, food="italian")]
        delivery = channel.deliver(frames, Role.SEEKER, np.random.default_rng(0), np.random.default_rng(0))
        assert delivery.understood == frames
        assert delivery.utterance.text == "inform(food=italian)"

    def test_dropped_turn_is_null(self, stores, domain):
        channel = Channel(ChannelMode.LANGUAGE, stores, only(p_frame_drop=1.0), domain=domain)
        delivery = channel.deliver(
            [Frame.request("phone")], Role.SEEKER, np.random.default_rng(0), np.random.default_rng(0)
        )
        assert delivery.after_noise == []
        assert delivery.utterance.is_empty
        assert delivery.is_null

    def test_speaker_override(self, stores, domain):
        channel = Channel(
            ChannelMode.LANGUAGE,
            stores,
            NoiseConfig.lossless(),
            domain=domain,
            noise_overrides={Role.PROVIDER: only(p_frame_drop=1.0)},
        )
        rng = np.random.default_rng(0)
        assert channel.deliver([Frame(Intent.BYE)], Role.PROVIDER, rng, rng).is_null
        assert not channel.deliver([Frame(Intent.BYE)], Role.SEEKER, rng, rng).is_null


class TestNoise:
    def test_lossless_consumes_no_draws(self):
        rng = np.random.default_rng(5)
        frames = [Frame.of(Intent.INFORM, food="italian")]
        assert NoiseModel(NoiseConfig.lossless()).apply(frames, rng) == frames
        assert rng.random() == np.random.default_rng(5).random()

    def test_slot_confusion_on_request(self):
        cfg = only(p_slot_confusion=1.0, slot_confusions={"phone": ["postcode"]})
        noisy = NoiseModel(cfg).apply([Frame.request("phone")], np.random.default_rng(0))
        assert noisy == [Frame.request("postcode")]

    def test_value_corruption_stays_in_vocabulary(self):
        cfg = only(p_value_corruption=1.0)
        model = NoiseModel(cfg, vocabulary={"food": ["italian", "thai"]})
        noisy = model.apply([Frame.of(Intent.INFORM, food="italian")], np.random.default_rng(0))
        assert noisy == [Frame.of(Intent.INFORM, food="thai")]

    def test_truncation_keeps_first_token(self):
        noisy = NoiseModel(only(p_value_truncation=1.0)).apply(
            [Frame.of(Intent.INFORM, phone=PHONE), Frame.of(Intent.INFORM, food="thai")],
            np.random.default_rng(0),
        )
        assert noisy == [Frame.of(Intent.INFORM, phone="01223"), Frame.of(Intent.INFORM, food="thai")]

    def test_default_confusion_groups(self, domain):
        groups = default_confusion_groups(domain)
        assert groups["food"] == ["area", "pricerange"]
        assert "phone" in groups["addr"]
        assert all("name" not in targets for targets in groups.values())

    def test_drop_rate(self):
        model = NoiseModel(only(p_frame_drop=0.3))
        rng = np.random.default_rng(0)
        kept = sum(len(model.apply([Frame(Intent.BYE)], rng)) for _ in range(5000))
        assert kept / 5000 == pytest.approx(0.7, abs=0.03)

    def test_uniform_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            NoiseConfig.uniform(1.5)


class TestBleu:
    @pytest.mark.parametrize(
        "candidate, reference",
        [
            ("the cat sat on the mat", "the cat sat on a mat today"),
            ("<name> is a nice place in the <area> of town", "<name> is a nice place ."),
            ("good bye", "good bye now"),
        ],
    )
    def test_matches_nltk(self, candidate, reference):
        cand, ref = candidate.split(), reference.split()
        n = min(4, len(cand))
        expected = sentence_bleu([ref], cand, weights=(1.0 / n,) * n)
        assert bleu(cand, ref) == pytest.approx(expected)

    def test_zero_precision(self):
        assert bleu("a b c d".split(), "w x y z".split()) == 0.0
        assert bleu([], ["a"]) == 0.0

    def test_identical(self):
        tokens = "what is the phone number".split()
        assert bleu(tokens, tokens) == pytest.approx(1.0)

    def test_max_over_references(self, provider_store):
        assert bleu_max("<name> is a nice place .", "act_offer <name>", provider_store) == pytest.approx(1.0)
        assert bleu_max("<NAME>  is a nice place .", "act_offer  <name>", provider_store) == pytest.approx(1.0)

    def test_missing_reference(self, provider_store):
        with pytest.raises(MissingReferenceError):
            bleu_max("hello", "act_hello", provider_store)

    def test_leave_one_out(self):
        store = TemplateStore(
            Role.SEEKER, {"act_repeat": ["repeat", "can you repeat that"], "act_bye": ["good bye"]}
        )
        rows = leave_one_out_bleu(store)
        assert [(mr, template) for mr, template, _ in rows] == [
            ("act_repeat", "repeat"),
            ("act_repeat", "can you repeat that"),
        ]
        # a one-token candidate against four reference tokens: unigram precision 1, brevity e^-3
        assert rows[0][2] == pytest.approx(np.exp(-3.0))
        assert rows[1][2] == 0.0


class TestNLUScores:
    def test_partial_recall(self):
        rows = [
            ([Frame.of(Intent.INFORM, food="thai")], [Frame.of(Intent.INFORM, food="thai")]),
            (
                [Frame.of(Intent.INFORM, food="thai"), Frame.request("addr")],
                [Frame.of(Intent.INFORM, food="thai")],
            ),
        ]
        scores = score_predictions(rows)
        assert scores.intent_f1 == pytest.approx(0.8)
        assert scores.slot_f1 == pytest.approx(0.8)
        assert scores.frame_f1 == pytest.approx(0.8)
        assert scores.n_rows == 2

    def test_wrong_value_hurts_slots_not_intents(self):
        rows = [([Frame.of(Intent.INFORM, food="thai")], [Frame.of(Intent.INFORM, food="italian")])]
        scores = score_predictions(rows)
        assert scores.intent_f1 == pytest.approx(1.0)
        assert scores.slot_f1 == 0.0
        assert scores.frame_f1 == 0.0

    def test_empty_corpus(self, seeker_store):
        with pytest.raises(UndefinedMetricError):
            score_predictions([])
        with pytest.raises(UndefinedMetricError):
            evaluate_nlu(RuleNLU(seeker_store), [])

    def test_perfect_on_own_templates(self, seeker_store):
        corpus = [
            ("i want a cheap restaurant", [Frame.of(Intent.INFORM, pricerange="cheap")]),
            ("whats the address", [Frame.request("addr")]),
            ("good bye", [Frame(Intent.BYE)]),
        ]
        scores = evaluate_nlu(RuleNLU(seeker_store), corpus)
        assert scores.to_dict() == {"intent_f1": 1.0, "slot_f1": 1.0, "frame_f1": 1.0, "n_rows": 3}


class TestTags:
    def test_intent_prefixed_iob(self):
        tokens = "is it pizza hut city centre in the north".split()
        frames = [
            Frame.of(Intent.CONFIRM, name="pizza hut city centre"),
            Frame.of(Intent.INFORM, area="north"),
        ]
        assert frames_to_tags(tokens, frames) == [
            "O", "O", "B-confirm_name", "I-confirm_name", "I-confirm_name", "I-confirm_name",
            "O", "O", "B-inform_area",
        ]

    def test_requests_and_dontcare_have_no_span(self):
        tokens = "what is the address".split()
        frames = [Frame.request("addr"), Frame.of(Intent.INFORM, food="dontcare")]
        assert frames_to_tags(tokens, frames) == ["O"] * 4

    def test_missing_values_listed(self):
        with pytest.raises(TaggingError) as info:
            frames_to_tags(["hello"], [Frame.of(Intent.INFORM, food="thai", area="west")])
        assert info.value.missing == ["thai", "west"]
