"""Tests for frames, MR strings and action spaces."""

import pytest

from parley.src.core.acts import (
    ActionSpaceConfig,
    Frame,
    Intent,
    PolicyAction,
    Role,
    build_action_space,
    frames_to_mr,
    mr_to_frames,
    parse_action,
)
from parley.src.core.errors import ActionSpaceSizeError, MRParseError


class TestFrames:
    def test_request_frame(self):
        frame = Frame.request("phone")
        assert frame.requested_slot == "phone"
        assert frame.slots == ("phone",)
        assert str(frame) == "request(phone)"

    def test_str_with_values(self):
        frame = Frame.of(Intent.INFORM, food="italian", area=None)
        assert str(frame) == "inform(food=italian, area)"

    def test_delexicalize(self):
        frame = Frame.of(Intent.INFORM, food="italian")
        assert frame.delexicalize() == Frame(Intent.INFORM, (("food", None),))
        assert Frame.request("addr").delexicalize() == Frame.request("addr")

    def test_dict_round_trip(self):
        frame = Frame.of(Intent.OFFER, name="prezzo")
        assert Frame.from_dict(frame.to_dict()) == frame

    def test_intent_tokens(self):
        assert Intent.EXPL_CONF.token == "act_expl_conf"
        assert Intent.from_token("act_reqalts") is Intent.REQALTS
        with pytest.raises(ValueError):
            Intent.from_token("inform")

    def test_roles_are_partners(self):
        assert Role.SEEKER.partner is Role.PROVIDER
        assert Role.PROVIDER.partner is Role.SEEKER


class TestMR:
    def test_frames_to_mr(self):
        frames = [
            Frame.of(Intent.INFORM, food="italian"),
            Frame.of(Intent.INFORM, pricerange="cheap"),
            Frame.of(Intent.OFFER, name="pizza hut city centre"),
        ]
        assert frames_to_mr(frames) == "act_inform <food> act_inform <pricerange> act_offer <name>"

    def test_request_renders_requested_slot(self):
        assert frames_to_mr([Frame.request("area")]) == "act_request <area>"

    def test_parse(self):
        frames = mr_to_frames("act_welcomemsg act_request <area>")
        assert frames == [Frame(Intent.WELCOMEMSG), Frame.request("area")]

    def test_parse_repeated_tags_keep_order(self):
        frames = mr_to_frames("act_select <food> <food>")
        assert frames == [Frame(Intent.SELECT, (("food", None), ("food", None)))]

    def test_parse_then_serialize(self):
        mr = "act_offer <name> act_inform <phone> act_reqmore"
        assert frames_to_mr(mr_to_frames(mr)) == mr

    @pytest.mark.parametrize(
        "mr, position",
        [
            ("", 0),
            ("<food> act_inform", 0),
            ("act_inform <food> act_dance", 2),
            ("act_inform food", 1),
        ],
    )
    def test_parse_errors_carry_position(self, mr, position):
        with pytest.raises(MRParseError) as info:
            mr_to_frames(mr)
        assert info.value.position == position


class TestActionSpace:
    def test_default_sizes(self, domain):
        assert len(build_action_space(domain, Role.SEEKER)) == 23
        assert len(build_action_space(domain, Role.PROVIDER)) == 23

    def test_seeker_space_contents(self, domain):
        tokens = build_action_space(domain, Role.SEEKER).tokens
        assert tokens[0] == "act_hello"
        assert "act_inform(this)" in tokens
        assert "act_request(phone)" in tokens
        assert "act_welcomemsg" not in tokens

    def test_provider_space_contents(self, domain):
        tokens = build_action_space(domain, Role.PROVIDER).tokens
        assert tokens[0] == "act_welcomemsg"
        assert "act_select(food)" in tokens
        assert "act_expl_conf(area)" in tokens
        assert "act_inform(name)" in tokens

    def test_fingerprint_stable_and_role_specific(self, domain):
        a = build_action_space(domain, Role.SEEKER)
        b = build_action_space(domain, Role.SEEKER)
        assert a.fingerprint == b.fingerprint
        assert a.fingerprint != build_action_space(domain, Role.PROVIDER).fingerprint

    def test_size_mismatch(self, domain):
        with pytest.raises(ActionSpaceSizeError) as info:
            build_action_space(domain, Role.SEEKER, ActionSpaceConfig(expected_size=10))
        assert len(info.value.actions) == 23

    def test_explicit_actions(self, domain):
        cfg = ActionSpaceConfig(
            expected_size=None, seeker_actions=["act_bye", "act_inform(food)", "act_request(addr)"]
        )
        space = build_action_space(domain, Role.SEEKER, cfg)
        assert space.actions == (
            PolicyAction(Intent.BYE),
            PolicyAction(Intent.INFORM, "food"),
            PolicyAction(Intent.REQUEST, "addr"),
        )
        assert space.index(PolicyAction(Intent.INFORM, "food")) == 1
        assert space.contains_index(2) and not space.contains_index(3)

    def test_parse_action(self):
        assert parse_action("act_expl_conf(area)") == PolicyAction(Intent.EXPL_CONF, "area")
        with pytest.raises(ValueError):
            parse_action("inform(food)")
