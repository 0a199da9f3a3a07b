"""
Chat command: talk to a trained agent in the terminal.
"""

import sys
from pathlib import Path
from typing import Optional

import click

from parley.cli.adapters.experiment_runner import CLIExperimentRunner
from parley.cli.config_manager import load_config
from parley.cli.utils.errors import EXIT_INTERRUPTED, ConfigurationError, handle_error
from parley.cli.utils.logging import create_logger
from parley.cli.utils.validation import HANDCRAFTED_NAMES
from parley.src.core.acts.models import Role
from parley.src.core.game.chat import QUIT_COMMAND


@click.command(name="chat")
@click.argument("policy", type=str)
@click.option(
    "--role",
    "human_role",
    type=click.Choice([role.value for role in Role]),
    default="seeker",
    show_default=True,
    help="The role you play; the agent plays the other one",
)
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config YAML (must match the one the policy was trained with)",
)
@click.option("--seed", type=int, help="Seed for the session goal and the agent's streams")
@click.option("--out", "-o", type=click.Path(file_okay=False), help="Where the session transcript goes")
@click.option("--verbose", "-v", is_flag=True, help="Show the frames behind every turn")
def chat_command(
    policy: str,
    human_role: str,
    config_path: Optional[str],
    seed: Optional[int],
    out: Optional[str],
    verbose: bool,
):
    """
    Hold a dialogue with an agent.

    POLICY is a policy file for the agent's role, or 'handcrafted'. What
    you type goes through the agent's rule NLU; input it cannot parse
    reaches the agent as nothing at all. Type /quit to leave. The session
    transcript is saved in the standard transcript format.

    Examples:

    \b
    # Look for a restaurant with a trained provider
    $ parley chat runs/wolf/provider_policy.json.gz

    \b
    # Play the provider against a trained seeker
    $ parley chat runs/wolf/seeker_policy.json.gz --role provider
    """
    logger = create_logger(verbose=verbose)

    try:
        cfg = load_config(
            Path(config_path) if config_path else None,
            seed=seed,
            output_dir=Path(out) if out else None,
            mode="language",
        )
        human = Role(human_role)
        agent_role = human.partner
        source = None if policy in HANDCRAFTED_NAMES[agent_role] else Path(policy)
        if source is not None and not source.is_file():
            raise ConfigurationError(f"Not a policy file: {policy}")

        runner = CLIExperimentRunner(cfg, verbose=verbose)
        session = runner.chat_session(agent_role, source)

        click.echo()
        click.secho(f"You are the {human.value}; the agent is the {agent_role.value}.", fg="blue", bold=True)
        if human is Role.SEEKER:
            click.echo(f"Your goal: {session.goal.describe()}")
        click.echo(f"Type {QUIT_COMMAND} to end the session.")
        click.echo()

        while not session.finished:
            if session.agent_to_move:
                record = session.agent_turn()
                click.secho(f"{agent_role.value}: {record.utterance}", fg="cyan")
                logger.debug(f"  act {record.action_token}, frames {[str(f) for f in record.emitted]}")
                continue

            try:
                text = click.prompt(human.value, prompt_suffix="> ")
            except click.exceptions.Abort:
                break
            if text.strip() == QUIT_COMMAND:
                break
            record = session.human_turn(text)
            if not record.understood:
                logger.warning("Not understood; the agent heard nothing")
            else:
                logger.debug(f"  understood {[str(f) for f in record.understood]}")

        path, outcome = runner.save_chat(session)
        status = "succeeded" if outcome.objective_success else "did not succeed"
        own_return = outcome.seeker_return if human is Role.SEEKER else outcome.provider_return
        logger.summary(
            f"Dialogue {status}",
            [("Turns", outcome.turns), ("Your return", own_return)],
            ok=outcome.objective_success,
        )
        logger.outputs([path])

    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_error(e, verbose))
