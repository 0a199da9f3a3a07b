"""Tests for the seeker and provider trackers and the state encoders."""

import logging

import pytest

from parley.src.core.acts.models import Frame, Intent
from parley.src.core.ontology.models import Goal
from parley.src.core.tracking import (
    IntentClass,
    ProviderEncoder,
    SeekerEncoder,
    SeekerState,
    count_bucket,
    encode,
    initial_provider_state,
    intent_class,
    note_provider_frames,
    note_seeker_frames,
    update_provider,
    update_seeker,
)
from parley.src.core.tracking.models import ANSWERED, EXPRESSED, REQUESTED, UNEXPRESSED, UNREQUESTED


@pytest.fixture
def goal():
    return Goal(constraints={"food": "italian", "pricerange": "cheap"}, requests=("addr", "phone"))


class TestIntentClass:
    @pytest.mark.parametrize(
        "frames, expected",
        [
            ([], IntentClass.NONE),
            ([Frame.request("area")], IntentClass.QUESTION),
            ([Frame.of(Intent.OFFER, name="x")], IntentClass.INFORMATION),
            ([Frame(Intent.CANTHELP)], IntentClass.NEGATIVE),
            ([Frame(Intent.BYE)], IntentClass.CLOSING),
            ([Frame(Intent.WELCOMEMSG)], IntentClass.OTHER),
            ([Frame.of(Intent.INFORM, food="thai"), Frame(Intent.REQMORE)], IntentClass.OTHER),
        ],
    )
    def test_last_frame_decides(self, frames, expected):
        assert intent_class(frames) is expected

    @pytest.mark.parametrize("count, bucket", [(0, "0"), (1, "1"), (2, "2-4"), (4, "2-4"), (5, "5+")])
    def test_count_bucket(self, count, bucket):
        assert count_bucket(count) == bucket


class TestSeekerTracker:
    def test_initial(self, goal):
        state = SeekerState.initial(goal)
        assert state.constraint_status == {"food": UNEXPRESSED, "pricerange": UNEXPRESSED}
        assert state.request_status == {"addr": UNREQUESTED, "phone": UNREQUESTED}
        assert state.offer_on_table is None

    def test_own_frames(self, goal):
        state = note_seeker_frames(
            SeekerState.initial(goal),
            [Frame.of(Intent.INFORM, food="italian"), Frame.request("phone")],
        )
        assert state.constraint_status["food"] == EXPRESSED
        assert state.request_status["phone"] == REQUESTED
        assert state.request_status["addr"] == UNREQUESTED

    def test_inform_this_takes_back_a_real_constraint(self, goal):
        state = note_seeker_frames(SeekerState.initial(goal), [Frame.of(Intent.INFORM, pricerange="cheap")])
        state = update_seeker(state, [Frame.request("pricerange")])
        assert state.provider_asked == "pricerange"
        state = note_seeker_frames(state, [Frame.of(Intent.INFORM, this="dontcare")])
        assert state.constraint_status["pricerange"] == UNEXPRESSED

    def test_inform_this_expresses_dontcare_constraint(self):
        goal = Goal(constraints={"food": "italian", "area": "dontcare"}, requests=("phone",))
        state = update_seeker(SeekerState.initial(goal), [Frame.request("area")])
        state = note_seeker_frames(state, [Frame.of(Intent.INFORM, this="dontcare")])
        assert state.constraint_status["area"] == EXPRESSED
        assert state.constraint_status["food"] == UNEXPRESSED

    def test_wrong_value_leaves_constraint_open(self, goal):
        state = note_seeker_frames(SeekerState.initial(goal), [Frame.of(Intent.INFORM, food="thai")])
        assert state.constraint_status["food"] == UNEXPRESSED

    def test_answer_only_counts_when_requested(self, goal, domain):
        state = SeekerState.initial(goal)
        state = update_seeker(state, [Frame.of(Intent.INFORM, phone="01223 323737")], domain)
        assert state.received["phone"] == "01223 323737"
        assert state.request_status["phone"] == UNREQUESTED

        state = note_seeker_frames(state, [Frame.request("phone")])
        state = update_seeker(state, [Frame.of(Intent.INFORM, phone="01223 323737")], domain)
        assert state.request_status["phone"] == ANSWERED

    def test_new_offer_reopens_answers(self, goal, domain):
        state = note_seeker_frames(SeekerState.initial(goal), [Frame.request("phone")])
        state = update_seeker(
            state,
            [Frame.of(Intent.OFFER, name="pizza hut city centre"), Frame.of(Intent.INFORM, phone="1")],
            domain,
        )
        assert state.offer_on_table == "pizza hut city centre"
        assert state.request_status["phone"] == ANSWERED

        state = update_seeker(state, [Frame.of(Intent.OFFER, name="da vinci pizzeria")], domain)
        assert state.offer_on_table == "da vinci pizzeria"
        assert state.request_status["phone"] == REQUESTED
        assert "phone" not in state.received

    def test_offer_applied_before_informs(self, goal, domain):
        state = note_seeker_frames(SeekerState.initial(goal), [Frame.request("addr")])
        state = update_seeker(
            state,
            [Frame.of(Intent.INFORM, addr="20 milton road chesterton"), Frame.of(Intent.OFFER, name="da vinci pizzeria")],
            domain,
        )
        assert state.request_status["addr"] == ANSWERED
        assert state.received["addr"] == "20 milton road chesterton"

    def test_unknown_slot_ignored(self, goal, domain):
        state = update_seeker(SeekerState.initial(goal), [Frame.of(Intent.INFORM, colour="red")], domain)
        assert "colour" not in state.received

    def test_reqalts_and_restart(self, goal, domain):
        state = note_seeker_frames(SeekerState.initial(goal), [Frame.of(Intent.INFORM, food="italian")])
        state = update_seeker(state, [Frame.of(Intent.OFFER, name="pizza hut city centre")], domain)
        assert note_seeker_frames(state, [Frame(Intent.REQALTS)]).offer_on_table is None

        restarted = note_seeker_frames(state, [Frame(Intent.RESTART)])
        assert restarted.constraint_status["food"] == UNEXPRESSED
        assert restarted.received == {}

    def test_updates_do_not_mutate(self, goal):
        state = SeekerState.initial(goal)
        note_seeker_frames(state, [Frame.request("phone")])
        assert state.request_status["phone"] == UNREQUESTED
        assert update_seeker(state, []).turn == 1
        assert state.turn == 0


class TestProviderTracker:
    def test_initial_matches_everything(self, db):
        state = initial_provider_state(db)
        assert len(state.matches) == len(db)
        assert state.db_count_bucket == "5+"

    def test_constraints_narrow_query(self, db):
        state = update_provider(
            initial_provider_state(db),
            [Frame.of(Intent.INFORM, food="italian"), Frame.of(Intent.INFORM, pricerange="cheap")],
            db,
        )
        assert state.expressed_constraints == {"food": "italian", "pricerange": "cheap"}
        assert state.db_count_bucket == "2-4"
        assert state.item_in_focus["name"] == "pizza hut city centre"
        assert state.high_entropy_slot == "area"

    def test_reqalts_moves_focus_and_resets_answers(self, db):
        state = update_provider(
            initial_provider_state(db),
            [Frame.of(Intent.INFORM, food="italian", pricerange="cheap"), Frame.request("phone")],
            db,
        )
        state = note_provider_frames(state, [Frame.of(Intent.INFORM, phone="01223 323737")])
        assert state.requested_slots == {"phone": True}

        state = update_provider(state, [Frame(Intent.REQALTS)], db)
        assert state.item_in_focus["name"] == "da vinci pizzeria"
        assert state.requested_slots == {"phone": False}

    def test_inform_this_is_dontcare_for_asked_slot(self, db, domain):
        state = note_provider_frames(initial_provider_state(db), [Frame.request("area")])
        assert state.last_requested_slot == "area"
        state = update_provider(state, [Frame.of(Intent.INFORM, this="dontcare")], db)
        assert state.expressed_constraints == {"area": domain.dontcare_token}

    def test_inform_this_without_question_is_ignored_quietly(self, db, caplog):
        with caplog.at_level(logging.WARNING):
            state = update_provider(initial_provider_state(db), [Frame.of(Intent.INFORM, this="dontcare")], db)
        assert state.expressed_constraints == {}
        assert caplog.records == []

    def test_request_of_unknown_slot_warns(self, db, caplog):
        with caplog.at_level(logging.WARNING):
            state = update_provider(initial_provider_state(db), [Frame.request("colour")], db)
        assert state.requested_slots == {}
        assert "colour" in caplog.text

    def test_offer_recorded(self, db):
        state = update_provider(initial_provider_state(db), [Frame.of(Intent.INFORM, food="italian")], db)
        state = note_provider_frames(state, [Frame.of(Intent.OFFER, name="pizza hut city centre")])
        assert state.offered_item["name"] == "pizza hut city centre"
        assert state.to_dict()["offered_item"] == "pizza hut city centre"

    def test_restart(self, db):
        state = update_provider(initial_provider_state(db), [Frame.of(Intent.INFORM, food="thai")], db)
        state = update_provider(state, [Frame(Intent.RESTART)], db)
        assert state.expressed_constraints == {}
        assert len(state.matches) == len(db)

    def test_unmatched_constraints(self, db):
        state = update_provider(
            initial_provider_state(db),
            [Frame.of(Intent.INFORM, food="african", area="north")],
            db,
        )
        assert state.db_count_bucket == "0"
        assert state.item_in_focus is None


class TestEncoders:
    def test_cardinalities(self, domain):
        n_inf, n_req = len(domain.informable_slots), len(domain.requestable_slots)
        assert SeekerEncoder(domain).cardinality == 2**n_inf * 3**n_req * 2 * len(IntentClass)
        assert ProviderEncoder(domain).cardinality == 2**n_inf * 2**n_req * 4 * 2 * len(IntentClass)

    def test_seeker_ids_are_stable_and_decodable(self, goal, domain):
        encoder = SeekerEncoder(domain)
        state = note_seeker_frames(SeekerState.initial(goal), [Frame.of(Intent.INFORM, food="italian")])
        state_id = encoder.encode(state)
        assert 0 <= state_id < encoder.cardinality
        assert encoder.decode(state_id) == encoder.features(state)
        assert encode(state, domain) == state_id
        assert state_id != encoder.encode(SeekerState.initial(goal))

    def test_provider_ids(self, db, domain):
        encoder = ProviderEncoder(domain)
        start = initial_provider_state(db)
        narrowed = update_provider(start, [Frame.of(Intent.INFORM, food="italian")], db)
        assert encoder.encode(start) != encoder.encode(narrowed)
        assert encoder.decode(encoder.encode(narrowed)) == encoder.features(narrowed)
        assert encode(narrowed, domain) == encoder.encode(narrowed)

    def test_goals_with_same_open_work_share_ids(self, domain):
        encoder = SeekerEncoder(domain)
        small = Goal(constraints={"food": "italian"}, requests=("phone",))
        large = Goal(constraints={"food": "thai", "area": "north"}, requests=("phone", "addr"))
        small_state = SeekerState.initial(small)
        large_state = note_seeker_frames(SeekerState.initial(large), [Frame.of(Intent.INFORM, area="north")])
        large_state = note_seeker_frames(large_state, [Frame.request("addr")])
        large_state = update_seeker(large_state, [Frame.of(Intent.INFORM, addr="x")], domain)
        assert large_state.request_status["addr"] == ANSWERED
        # only the partner's last turn differs; answered and expressed slots read as settled
        assert encoder.encode(large_state) != encoder.encode(small_state)
        large_state.last_provider_frames = small_state.last_provider_frames
        assert encoder.encode(large_state) == encoder.encode(small_state)

    def test_provider_owed_flag_clears_when_answered(self, db, domain):
        encoder = ProviderEncoder(domain)
        owed_index = len(domain.informable_slots) + list(domain.requestable_slots).index("phone")
        state = update_provider(
            initial_provider_state(db),
            [Frame.of(Intent.INFORM, food="italian"), Frame.request("phone")],
            db,
        )
        assert encoder.features(state)[owed_index] == 1
        answered = note_provider_frames(state, [Frame.of(Intent.INFORM, phone="01223 323737")])
        assert encoder.features(answered)[owed_index] == 0
