from configparser import ConfigParser
from importlib import import_module
from logging import basicConfig, getLogger
from os import environ, getpid, path
from pkgutil import iter_modules
from sys import argv, exit
from typing import List

from .serial.runspec import runspec
from .utility.defaultconfig import defaultconfig
from .utility.exceptions import hypothesiserror, voigtexception
from .utility.instance import instance
from .utility.logger import dateformat, logformat, logger

usage = "Usage: voigt <subcommand> [config.json] [--param value ...]"


def main() -> None:
    exit(voigt().main(argv[1:]))


def run_command(args: List[str]) -> int:
    """
    Runs one command line, ``args`` excluding the program name.

    :returns: The exit status: 0 on success or pass, 2 on a violated
        hypothesis or envelope, 1 on any other error.
    """
    return voigt().main(list(args))


class voigt:
    """
    Command line front end. Loads the subcommand modules, applies the
    environment and command line parameters to the settings, reads the run
    configuration and hands it to the subcommand.
    """

    def __init__(self) -> None:
        basicConfig(datefmt=dateformat, format=logformat)

    def main(self, args: List[str]) -> int:
        """
        Runs ``voigt <subcommand> [config.json] [--param value ...]``.
        Parameters may also be given as ``VOIGT_<PARAM>`` environment
        variables; the command line wins.
        """
        instance.reset()
        instance.config = ConfigParser()
        instance.config.read_dict(defaultconfig)
        logger().info("Started voigt with pid %s", getpid())

        try:
            root = f"{path.dirname(__file__)}/command"
            modules = [i for _, i, _ in iter_modules([root]) if i[0] != ("_")]
            logger().debug("Loaded subcommand modules %s", modules)

            instance.commands = {
                module.replace("_", "-"): import_module(
                    f"voigt.command.{module}"
                ).__dict__[module]
                for module in modules
            }

            positional = []

            while args and not args[0].startswith("--"):
                positional += [args.pop(0)]

            queue = self.environment() + args

            while queue:
                self.param(queue)

            return self.dispatch(positional)

        except KeyboardInterrupt:
            print("\N{bomb}")
            return 1
        except SystemExit as exception:
            if isinstance(exception.code, str):
                logger().critical(exception)
                return 1
            return exception.code or 0
        except hypothesiserror as exception:
            logger().error(exception)
            return 2
        except (voigtexception, OSError) as exception:
            logger().error(exception)
            return 1
        except Exception as exception:
            logger().exception(exception)
            return 1

        finally:
            if instance.logfile is not None:
                getLogger().removeHandler(instance.logfile)
                instance.logfile.close()

            logger().info("Stopped voigt with pid %s", getpid())

    def environment(self) -> List[str]:
        """
        Translates ``VOIGT_<PARAM>`` environment variables into parameters.
        """
        root = f"{path.dirname(__file__)}/param"
        args = []

        for _, module, _ in iter_modules([root]):
            value = environ.get(f"VOIGT_{module.upper()}")

            if module[0] != "_" and value is not None:
                args += [f"--{module}", *([value] if value else [])]

        return args

    def param(self, queue: List[str]) -> None:
        """
        Parses the parameter at the head of ``queue``, consuming it and its
        arguments.
        """
        if not queue[0].startswith("--"):
            exit(f"Invalid argument {queue[0]}")

        name = queue[0][2:]

        try:
            import_module(f"voigt.param.{name}").__dict__[name](queue)
        except SystemExit:
            raise
        except Exception:
            exit(f"Invalid parameter or argument to {name}")

    def dispatch(self, positional: List[str]) -> int:
        if not positional or positional[0] not in instance.commands:
            print(usage)
            print("Subcommands:", ", ".join(instance.commands))
            logger().error("Unknown subcommand %s", positional[:1])
            return 1

        name, *rest = positional
        file = rest[0] if rest else instance.runconfig

        if not file:
            logger().error("No run configuration given to %s", name)
            return 1

        spec = runspec.read(file)
        status = instance.commands[name](spec).run()
        logger().info("Finished %s with status %i", name, status)

        return status


if __name__ == "__main__":
    main()
