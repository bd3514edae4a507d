import typer

from pytsrp import __version__
from pytsrp.cli.cli_config import app as command_config_app
from pytsrp.cli.cli_evaluate import evaluate
from pytsrp.cli.cli_synth import app as command_synth_app
from pytsrp.lib.config import ConfigurationParser

# Load configuration (singleton)
CONFIG_PARSER = ConfigurationParser()

# Instantiate Typer
app = typer.Typer(no_args_is_help=True)

# Add sub-commands
app.add_typer(command_config_app)
app.add_typer(command_synth_app)
app.command("evaluate")(evaluate)


@app.command("version")
def version():
    """Print version information."""
    typer.echo(f"Time-Series Range Precision/Recall v{__version__}")


def main():
    """Entry point for the tsrp script."""
    app()


if __name__ == "__main__":
    main()
