import builtins
import logging
import os

import click

import numseg.constants as const
from numseg.exceptions import ValidationError

logger = logging.getLogger(__name__)


class Entrypoint(click.MultiCommand):
    """ Click MultiCommand Entrypoint For Numseg CLI

    Errors raised by a command end the program with EXIT_VALIDATION_ERROR for
    invalid input and EXIT_RUNTIME_ERROR for everything else.
    """

    def list_commands(self, ctx):
        """Dynamically get the list of commands."""
        rv = []
        for filename in os.listdir(os.path.dirname(__file__)):
            if filename.endswith(".py") and not filename.startswith("__init__"):
                rv.append(filename[:-3])
        rv.sort()

        return rv

    def get_command(self, ctx, name):
        """Dynamically get the command."""
        ns = {}
        fn = os.path.join(os.path.dirname(__file__), name + ".py")
        if not os.path.exists(fn):
            return None
        with open(fn) as f:
            code = compile(f.read(), fn, "exec")
            builtins.eval(code, ns, ns)

        return ns["cli"]

    def invoke(self, ctx):
        """Run the command and map its errors to exit codes."""
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.exceptions.Abort):
            raise
        except click.ClickException as e:
            e.show()
            ctx.exit(const.EXIT_VALIDATION_ERROR)
        except ValidationError as e:
            logger.error(f"{type(e).__name__}: {e}")
            ctx.exit(const.EXIT_VALIDATION_ERROR)
        except Exception as e:
            logger.error(f"{type(e).__name__}: {e}")
            ctx.exit(const.EXIT_RUNTIME_ERROR)
