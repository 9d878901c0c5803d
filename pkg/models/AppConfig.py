import argparse
import json
import os
import re
import sys

import yaml
from yaml.constructor import ConstructorError
from yaml.scanner import ScannerError

from models.QSeries import SERIES_KINDS
from models.config import engineConfigParser, loggerConfigParser
from models.enums.GraphFormat import GraphFormat
from models.enums.ProjectionKind import ProjectionKind
from models.enums.SpaceMode import SpaceMode
from models.helper.LogHelper import Logger

DEFAULT_CONFIG_FILE = "bigpicture.yaml"


class AppConfig:
    def __init__(self, argv=None, **kwargs):
        self.cli_args = self._parse_arguments(argv)
        self.command = self.cli_args["command"]

        self.seed = None
        self.cap = 10000
        self.terms = 20
        self.tolerance = 1e-8
        self.max_snake_level = 10000
        self.threads_hint = 1
        self.json = False

        self.filelog = 0
        self.logfile = self.cli_args.get("logfile") or "bigpicture.log"
        self.fileloglevel = "DEBUG"
        self.consolelog = 1
        self.consoleloglevel = "INFO"

        if self.cli_args.get("logfile"):
            self.filelog = 1

        self.config_file = kwargs.get("config_file", DEFAULT_CONFIG_FILE)
        self.config_provided = False
        self.config = {}

        if self.cli_args.get("config") is not None:
            self.config_file = self.cli_args["config"]
            if not os.path.isfile(self.config_file):
                raise ValueError(f"Invalid config: cannot open config file: {self.config_file}")

        self.read_config()

        Logger.configure(
            filelog=self.filelog,
            logfile=self.logfile,
            fileloglevel=self.fileloglevel,
            consolelog=self.consolelog,
            consoleloglevel=self.consoleloglevel,
        )

    # read and set config from file
    def read_config(self):
        if os.path.isfile(self.config_file):
            self.config_provided = True
            try:
                with open(self.config_file, "r", encoding="utf8") as stream:
                    try:
                        self.config = yaml.safe_load(stream)
                    except Exception:
                        try:
                            stream.seek(0)
                            self.config = json.load(stream)
                        except json.decoder.JSONDecodeError as err:
                            raise ValueError(f"Invalid config.json: {str(err)}")

            except (ScannerError, ConstructorError) as err:
                raise ValueError(f"Invalid config: cannot parse config file: {str(err)}")

            except (IOError, FileNotFoundError) as err:
                raise ValueError(f"Invalid config: cannot open config file: {str(err)}")

            if self.config is None:
                self.config = {}
            if not isinstance(self.config, dict):
                raise ValueError("Invalid config: the top level must be a mapping")

        engine_args = {
            "seed": self.cli_args.get("seed"),
            "cap": self.cli_args.get("cap"),
            "terms": self.cli_args.get("terms"),
            "tolerance": self.cli_args.get("tolerance"),
            "threads_hint": self.cli_args.get("threads_hint"),
            "json": self.cli_args.get("json"),
        }
        engineConfigParser(self, self.config.get("engine"), engine_args)

        if "logger" in self.config:
            loggerConfigParser(self, self.config["logger"])

    def get_version_from_readme(self, readme: str = "README.md") -> str:
        regex = r"^# Big Picture (v\d{1,3}\.\d{1,3}\.\d{1,3})"
        version = "v0.0.0"
        try:
            with open(readme, "r", encoding="utf8") as stream:
                for line in stream:
                    match = re.search(regex, line)
                    if match is not None:
                        version = match.group(1)
                        break
        except (IOError, FileNotFoundError):
            Logger.error(f"Could not open {readme}")

        if version == "v0.0.0":
            Logger.error(f"Could not find version in {readme}")

        return version

    @staticmethod
    def _global_flags() -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true", help="Machine readable JSON output")
        common.add_argument("--seed", type=int, help="Seed for pseudorandom group elements")
        common.add_argument("--cap", type=int, help="Largest orbit to enumerate before giving up")
        common.add_argument("--terms", type=int, help="Number of q-series coefficients")
        common.add_argument("--tolerance", type=float, help="Numeric tolerance for float checks, between 0 and 1")
        common.add_argument("--threads-hint", dest="threads_hint", type=int, help="Worker threads for enumeration")
        common.add_argument("--config", type=str, help="Use the config file at the given location. e.g 'bigpicture.yaml'")
        common.add_argument("--logfile", type=str, help="Use the log file at the given location. e.g 'bigpicture.log'")
        return common

    def _parse_arguments(self, argv=None) -> dict:
        common = self._global_flags()
        modes = [m.text for m in SpaceMode]

        parser = argparse.ArgumentParser(prog="bp", description="Explore the big picture of lattice classes, its congruence groups and replicable q-series")
        parser.add_argument("--version", action="store_true", help="Print the version and exit")
        commands = parser.add_subparsers(dest="command", metavar="command")

        def command(name: str, help: str) -> argparse.ArgumentParser:
            return commands.add_parser(name, parents=[common], help=help)

        # big picture

        sub = command("canon", "Canonical vertex of a matrix")
        sub.add_argument("--matrix", type=str, required=True, help="Matrix as 'a,b;c,d'")

        sub = command("dist", "Hyperdistance between two vertices")
        sub.add_argument("--u", type=str, required=True, help="First vertex as 'a,b;c,d'")
        sub.add_argument("--v", type=str, required=True, help="Second vertex as 'a,b;c,d'")
        sub.add_argument("--p", type=int, help="Report the p-adic distance instead")

        sub = command("neighbors", "Neighbours in the p-adic tree")
        sub.add_argument("--vertex", type=str, required=True, help="Vertex as 'a,b;c,d'")
        sub.add_argument("--p", type=int, required=True, help="Prime")

        sub = command("sphere", "Vertices at hyperdistance exactly N")
        sub.add_argument("--center", type=str, default="1,0;0,1", help="Center vertex")
        sub.add_argument("--n", type=int, required=True, help="Hyperdistance")

        sub = command("ball", "Vertices at hyperdistance at most D")
        sub.add_argument("--center", type=str, default="1,0;0,1", help="Center vertex")
        sub.add_argument("--radius", type=int, required=True, help="Largest hyperdistance")

        sub = command("geodesic", "Shortest path between two vertices")
        sub.add_argument("--u", type=str, required=True, help="First vertex")
        sub.add_argument("--v", type=str, required=True, help="Second vertex")

        # congruence groups

        sub = command("thread", "Thread of level N")
        sub.add_argument("--N", type=int, required=True, help="Level")
        sub.add_argument("--format", type=str, choices=[f.text for f in GraphFormat], help="Write the thread as a graph instead")

        sub = command("snake", "Snake of level N")
        sub.add_argument("--N", type=int, required=True, help="Level")
        sub.add_argument("--envelope", action="store_true", help="Every vertex within a divisor of 24 of the thread")
        sub.add_argument("--format", type=str, choices=[f.text for f in GraphFormat], help="Write the snake as a graph instead")

        sub = command("al", "Atkin-Lehner involution W_e")
        sub.add_argument("--N", type=int, required=True, help="Level")
        sub.add_argument("--e", type=int, required=True, help="Exact divisor of N")

        sub = command("normalizer", "Membership in the normalizer of Gamma0(N)")
        sub.add_argument("--N", type=int, required=True, help="Level")
        sub.add_argument("--g", type=str, required=True, help="Group element as 'a,b;c,d'")

        sub = command("stab-check", "Check that random Gamma0(N) elements fix the snake")
        sub.add_argument("--N", type=int, required=True, help="Level")
        sub.add_argument("--samples", type=int, default=20, help="Number of random elements")

        sub = command("orbit", "Orbit of a vertex under generators")
        sub.add_argument("--vertex", type=str, default="1,0;0,1", help="Start vertex")
        sub.add_argument("--gen", type=str, action="append", required=True, help="Generator, repeatable")

        sub = command("invariant-tree", "Orbit of nu1 joined by geodesics")
        sub.add_argument("--gen", type=str, action="append", required=True, help="Generator, repeatable")

        # spectral

        sub = command("hecke", "Apply the Hecke operator T_N to a delta state")
        sub.add_argument("--vertex", type=str, default="1,0;0,1", help="Support of the delta state")
        sub.add_argument("--N", type=int, required=True, help="Index")

        sub = command("project", "Project a uniform ball state onto a support")
        sub.add_argument("--kind", type=str, required=True, choices=[k.text for k in ProjectionKind], help="Projection")
        sub.add_argument("--N", type=int, required=True, help="Sphere radius or level")
        sub.add_argument("--radius", type=int, default=6, help="Radius of the ball holding the state")

        sub = command("evolve-check", "Check the time evolution identity on a random kernel")
        sub.add_argument("--t", type=float, action="append", help="Time, repeatable")
        sub.add_argument("--kernel-size", dest="kernel_size", type=int, default=4, help="Number of double cosets in the kernel")

        sub = command("partition", "Truncated partition function")
        sub.add_argument("--beta", type=float, action="append", required=True, help="Inverse temperature, repeatable")
        sub.add_argument("--X", type=int, action="append", required=True, help="Determinant cutoff, repeatable")
        sub.add_argument("--mode", type=str, default="coset", choices=modes, help="State space")

        sub = command("gibbs", "Gibbs expectation of the determinant")
        sub.add_argument("--beta", type=float, required=True, help="Inverse temperature")
        sub.add_argument("--X", type=int, required=True, help="Determinant cutoff")
        sub.add_argument("--mode", type=str, default="coset", choices=modes, help="State space")

        # q-series

        sub = command("qseries", "Coefficients of a built-in series")
        sub.add_argument("kind", type=str, help=f"One of {', '.join(SERIES_KINDS)} or a class label such as 2A")
        sub.add_argument("--csv", action="store_true", help="class,n,value rows")

        sub = command("faber", "Faber polynomial Q_k of a series")
        sub.add_argument("--class", dest="label", type=str, default="1A", help="Built-in class or series kind")
        sub.add_argument("--series", type=str, help="McKay-Thompson CSV file")
        sub.add_argument("--k", type=int, required=True, help="Degree")

        sub = command("replicate", "Replicate f^(k) of a series")
        sub.add_argument("--class", dest="label", type=str, default="1A", help="Class label")
        sub.add_argument("--series", type=str, help="McKay-Thompson CSV file")
        sub.add_argument("--k", type=int, required=True, help="Replicate index")

        sub = command("verify-replicable", "Replicability report up to k_max")
        sub.add_argument("--class", dest="label", type=str, default="1A", help="Class label")
        sub.add_argument("--series", type=str, help="McKay-Thompson CSV file")
        sub.add_argument("--kmax", type=int, default=4, help="Largest replicate index")
        sub.add_argument("--sample", type=str, action="append", help="Sample point in the upper half plane, e.g. '0.1+1.2j'")

        sub = command("eval", "Evaluate a series in the upper half plane")
        sub.add_argument("--class", dest="label", type=str, default="1A", help="Built-in class or series kind")
        sub.add_argument("--series", type=str, help="McKay-Thompson CSV file")
        sub.add_argument("--z", type=str, required=True, help="Point, e.g. '1j' or '0.5+0.866j'")
        sub.add_argument("--dps", type=int, default=30, help="Decimal digits of working precision, at least 15")

        sub = command("export", "Export a set of vertices as a graph")
        sub.add_argument("--center", type=str, default="1,0;0,1", help="Center vertex")
        sub.add_argument("--radius", type=int, required=True, help="Ball radius")
        sub.add_argument("--format", type=str, default="dot", choices=[f.text for f in GraphFormat], help="Graph format")

        args = parser.parse_args(argv)
        if not args.version and args.command is None:
            parser.error("a command is required")
        return vars(args)
