"""
Frame Completion Solver
=======================
Main Orchestrator - Command Pipelines

This is the command-line entry point. Each subcommand runs a short
pipeline of agents and emits one JSON report.

Usage:
    python orchestrator.py check --input input/four_level.json --lambda 5/2,7/4,3/2,3/2
    python orchestrator.py complete --input input/four_level.json --both
    python orchestrator.py synthesize --input input/tight_frame.json --seed 7

Pipeline Flow:
    Problem JSON → ProblemParserAgent → [FeasibilityAgent | CompletionAgent] →
    EigenstepsAgent → SynthesisAgent → ReportAgent → Report JSON

Exit codes:
    0 success, 1 infeasible target, 2 input error,
    3 fast/naive disagreement, 4 verification failure
"""

import argparse
import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from colorama import Fore, Style
from jsonschema import ValidationError

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.absolute()
sys.path.insert(0, str(PROJECT_ROOT))

from config import (
    COMPLETION_MODES,
    DEBUG,
    DEFAULT_COMPLETION_MODE,
    DEFAULT_SEED,
    EXIT_CODES,
    FRAME_TOL,
    setup_logging,
)
from agents import (
    CompletionAgent,
    EigenstepsAgent,
    FeasibilityAgent,
    ProblemFile,
    ProblemParserAgent,
    ReportAgent,
    SynthesisAgent,
)
from logic_blocks.errors import (
    FrameCompletionError,
    Infeasible,
    PathDisagreement,
    PostVerificationFailed,
    ProblemFileError,
)
from logic_blocks.spectra import Spectrum, make_spectrum
from logic_blocks.synthesis import SymmetricMatrix

COMMANDS = ["check", "complete", "eigensteps", "synthesize", "verify"]


class Orchestrator:
    """
    Pipeline orchestrator for the frame completion solver.

    Runs the agents for one subcommand, writes the report and returns
    the process exit code. Progress goes to stderr; the report goes to
    the output file or stdout.
    """

    def __init__(
        self,
        mode: str = DEFAULT_COMPLETION_MODE,
        tol: float = FRAME_TOL,
        seed: int = DEFAULT_SEED,
        construct_initial: bool = False,
        verbose: bool = True,
        progress: Optional[TextIO] = None,
    ):
        """
        Initialize the orchestrator.

        Args:
            mode: Completion optimizer path (fast, naive, both)
            tol: Synthesis and verification tolerance
            seed: Seed for randomized eigenspace directions
            construct_initial: Build A from the zero operator instead of diag(alpha)
            verbose: Whether to print progress messages
            progress: Stream for progress messages (stderr by default)
        """
        self.verbose = verbose
        self.progress = progress
        self.tol = tol

        # Initialize all agents
        self.agents = {
            "parser": ProblemParserAgent(),
            "feasibility": FeasibilityAgent(),
            "completion": CompletionAgent(mode=mode),
            "eigensteps": EigenstepsAgent(),
            "synthesis": SynthesisAgent(tol=tol, seed=seed, construct_initial=construct_initial),
            "report": ReportAgent(),
        }

        # Pipeline state
        self.state: Dict[str, Any] = {}
        self._stage_total = 0

    def run(
        self,
        command: str,
        input_path: Optional[Path] = None,
        output_path: Optional[Path] = None,
        lam_override: Optional[List[str]] = None,
        stdin: Optional[TextIO] = None,
        stdout: Optional[TextIO] = None,
    ) -> int:
        """
        Execute one subcommand.

        Args:
            command: One of COMMANDS
            input_path: Problem (or synthesis report) file; stdin when None
            output_path: Report file; stdout when None
            lam_override: Target spectrum replacing the problem's lambda
            stdin, stdout: Streams used when no path is given

        Returns:
            Process exit code from EXIT_CODES
        """
        self.state = {
            "input": input_path if input_path is not None else (stdin or sys.stdin),
            "output": output_path,
            "stdout": stdout,
            "lam_override": lam_override,
        }
        self._print_header(command)
        start_time = datetime.now()

        try:
            code = getattr(self, f"_run_{command}")()
        except Infeasible as e:
            self._print_error(str(e))
            return EXIT_CODES["infeasible"]
        except PathDisagreement as e:
            self._print_error(str(e))
            return EXIT_CODES["path_disagreement"]
        except PostVerificationFailed as e:
            self._print_error(str(e))
            return EXIT_CODES["verification_failed"]
        except (ProblemFileError, OSError) as e:
            self._print_error(str(e))
            return EXIT_CODES["input_error"]
        except FrameCompletionError as e:
            self._print_error(str(e))
            # remaining ValueError kinds are malformed input; RuntimeError kinds are unverifiable results
            if isinstance(e, ValueError):
                return EXIT_CODES["input_error"]
            return EXIT_CODES["verification_failed"]

        self._print_summary(code, (datetime.now() - start_time).total_seconds())
        return code

    def _execute_stage(
        self,
        stage_num: int,
        agent_name: str,
        description: str,
        stage_func: Callable,
        *args
    ):
        """Execute a pipeline stage with logging."""
        self._print_stage(stage_num, agent_name, description)
        result = stage_func(*args)
        return result

    # =========================================================================
    # Commands
    # =========================================================================

    def _run_check(self) -> int:
        self._stage_total = 3
        self._execute_stage(1, "ProblemParserAgent", "Parsing problem...", self._stage_parse_problem)
        lam = self._target_from_input()
        if lam is None:
            raise ProblemFileError("check needs a target: give lambda in the problem or --lambda")
        self._execute_stage(2, "FeasibilityAgent", "Testing completion conditions...", self._stage_check, lam)
        self._execute_stage(3, "ReportAgent", "Writing feasibility report...", self._stage_emit, "check", self._check_body())
        if not self.state["feasibility"].feasible:
            return EXIT_CODES["infeasible"]
        return EXIT_CODES["ok"]

    def _run_complete(self) -> int:
        self._stage_total = 3
        self._execute_stage(1, "ProblemParserAgent", "Parsing problem...", self._stage_parse_problem)
        self._execute_stage(2, "CompletionAgent", "Computing optimal completion...", self._stage_complete)
        body = {
            "problem": self._problem_dict(),
            "completion": self.state["completion"].to_dict(),
        }
        self._execute_stage(3, "ReportAgent", "Writing completion report...", self._stage_emit, "complete", body)
        return EXIT_CODES["ok"]

    def _run_eigensteps(self) -> int:
        self._stage_total = 4
        self._execute_stage(1, "ProblemParserAgent", "Parsing problem...", self._stage_parse_problem)
        if not self._execute_stage(2, *self._target_stage()):
            return self._emit_infeasible()
        self._execute_stage(3, "EigenstepsAgent", "Building eigensteps...", self._stage_eigensteps)
        body = {
            "problem": self._problem_dict(),
            "target_source": self.state["target_source"],
            "eigensteps": self.state["table"].to_dict(),
            "validation": self.state["validation"].to_dict(),
        }
        self._execute_stage(4, "ReportAgent", "Writing eigensteps report...", self._stage_emit, "eigensteps", body)
        if not self.state["validation"].passed:
            return EXIT_CODES["verification_failed"]
        return EXIT_CODES["ok"]

    def _run_synthesize(self) -> int:
        self._stage_total = 5
        self._execute_stage(1, "ProblemParserAgent", "Parsing problem...", self._stage_parse_problem)
        if not self._execute_stage(2, *self._target_stage()):
            return self._emit_infeasible()
        self._execute_stage(3, "EigenstepsAgent", "Building eigensteps...", self._stage_eigensteps)
        self._execute_stage(4, "SynthesisAgent", "Constructing frame vectors...", self._stage_synthesize)

        result = self.state["synthesis"]
        body = {
            "problem": self._problem_dict(),
            "target_source": self.state["target_source"],
            "target": self.state["target"].to_strings(),
            "eigensteps": self.state["table"].to_dict(),
            "synthesis": result.to_dict(),
        }
        if "completion" in self.state:
            body["completion"] = self.state["completion"].to_dict()
        self._execute_stage(5, "ReportAgent", "Writing synthesis report...", self._stage_emit, "synthesize", body)
        if not (result.verification.passed and self.state["validation"].passed):
            return EXIT_CODES["verification_failed"]
        return EXIT_CODES["ok"]

    def _run_verify(self) -> int:
        self._stage_total = 3
        self._execute_stage(1, "ReportAgent", "Reading synthesis report...", self._stage_load_report)
        self._execute_stage(2, "SynthesisAgent", "Re-verifying vectors...", self._stage_verify)
        body = {
            "problem": self._problem_dict(),
            "target": self.state["target"].to_strings(),
            "verification": self.state["verification"].to_dict(),
        }
        self._execute_stage(3, "ReportAgent", "Writing verification report...", self._stage_emit, "verify", body)
        if not self.state["verification"].passed:
            return EXIT_CODES["verification_failed"]
        return EXIT_CODES["ok"]

    # =========================================================================
    # Pipeline Stages
    # =========================================================================

    def _stage_parse_problem(self):
        """Parse the problem document."""
        problem: ProblemFile = self.agents["parser"].parse(self.state["input"])
        self.state["problem"] = problem
        self._print_success(f"Problem parsed: M={problem.problem.dimension}, N={problem.problem.count}")

    def _stage_check(self, lam: Spectrum):
        self.state["lam"] = lam
        report = self.agents["feasibility"].check(self.state["problem"], lam)
        self.state["feasibility"] = report
        summary = self.agents["feasibility"].describe(report)
        if report.feasible:
            self._print_success(summary)
        else:
            self._print_failure(summary)
        return report.feasible

    def _stage_complete(self):
        result = self.agents["completion"].complete(self.state["problem"])
        self.state["completion"] = result
        self.state["target"] = result.beta
        self.state["target_source"] = "beta"
        self._print_success(f"beta = [{', '.join(result.beta.to_strings())}] ({result.mode})")

    def _stage_eigensteps(self):
        table, validation = self.agents["eigensteps"].build(self.state["problem"], self.state["target"])
        self.state["table"] = table
        self.state["validation"] = validation
        if validation.passed:
            self._print_success(f"{len(table.rows)} eigenstep rows, all conditions hold")
        else:
            self._print_failure("Eigensteps failed validation")

    def _stage_synthesize(self):
        result = self.agents["synthesis"].synthesize(self.state["problem"], self.state["table"])
        self.state["synthesis"] = result
        verification = result.verification
        message = (
            f"{result.vectors.count} vectors, spectrum deviation "
            f"{verification.max_spectrum_deviation:.3e}, norm deviation {verification.max_norm_deviation:.3e}"
        )
        if verification.passed:
            self._print_success(message)
        else:
            self._print_failure(message)

    def _stage_load_report(self):
        """Load a synthesis report and rebuild problem, operator, vectors and target."""
        document = self._load_document(self.state["input"])
        report_agent: ReportAgent = self.agents["report"]
        try:
            report_agent.validate_document("synthesize", document)
        except ValidationError as e:
            raise ProblemFileError(f"Not a synthesis report: {e.message}")

        problem = self.agents["parser"].parse(document["problem"])
        synthesis = document["synthesis"]
        try:
            initial = SymmetricMatrix(synthesis["matrix"])
            target = make_spectrum(document["target"])
        except ValueError as e:
            raise ProblemFileError(f"Invalid synthesis report: {e}")
        if len(synthesis["vectors"]) != problem.problem.count:
            raise ProblemFileError(
                f"Report has {len(synthesis['vectors'])} vectors for {problem.problem.count} lengths"
            )

        self.state["problem"] = problem
        self.state["initial"] = initial
        self.state["vectors"] = SynthesisAgent.load_vectors(synthesis["vectors"], problem.mu)
        self.state["target"] = target
        self._print_success(f"Report loaded: {problem.problem.count} vectors in dimension {initial.dimension}")

    def _stage_verify(self):
        verification = self.agents["synthesis"].verify(
            self.state["initial"], self.state["vectors"], self.state["target"]
        )
        self.state["verification"] = verification
        message = f"spectrum deviation {verification.max_spectrum_deviation:.3e}"
        if verification.passed:
            self._print_success(message)
        else:
            self._print_failure(message)

    def _stage_emit(self, command: str, body: Dict[str, Any]):
        report_agent: ReportAgent = self.agents["report"]
        document = report_agent.render(command, body)
        report_agent.write(document, self.state["output"], stream=self.state["stdout"])
        self._print_success(f"Report written to {self.state['output'] or 'stdout'}")

    # =========================================================================
    # Helpers
    # =========================================================================

    def _target_from_input(self) -> Optional[Spectrum]:
        """--lambda when given, else the problem's lambda, else None."""
        override = self.state["lam_override"]
        if override is None:
            return self.state["problem"].lam
        try:
            lam = make_spectrum(override)
        except (FrameCompletionError, ValueError) as e:
            raise ProblemFileError(f"Invalid --lambda: {e}")
        if len(lam) != len(self.state["problem"].alpha):
            raise ProblemFileError(
                f"--lambda has length {len(lam)}, alpha has length {len(self.state['problem'].alpha)}"
            )
        return lam

    def _target_stage(self):
        """Stage 2 for eigensteps/synthesize: check a given target or compute beta."""
        lam = self._target_from_input()
        if lam is None:
            return ("CompletionAgent", "Computing optimal completion...", self._stage_target_beta)
        return ("FeasibilityAgent", "Testing target spectrum...", self._stage_target_lambda, lam)

    def _stage_target_beta(self) -> bool:
        self._stage_complete()
        return True

    def _stage_target_lambda(self, lam: Spectrum) -> bool:
        feasible = self._stage_check(lam)
        self.state["target"] = lam
        self.state["target_source"] = "lambda"
        return feasible

    def _emit_infeasible(self) -> int:
        """Write the feasibility report for a rejected target."""
        self._stage_emit("check", self._check_body())
        return EXIT_CODES["infeasible"]

    def _check_body(self) -> Dict[str, Any]:
        report = self.state["feasibility"]
        return {
            "problem": self._problem_dict(),
            "lambda": self.state["lam"].to_strings(),
            "feasibility": report.to_dict(),
            "summary": self.agents["feasibility"].describe(report),
        }

    def _problem_dict(self) -> Dict[str, Any]:
        problem: ProblemFile = self.state["problem"]
        return problem.to_dict()

    @staticmethod
    def _load_document(source) -> Dict[str, Any]:
        try:
            if hasattr(source, "read"):
                return json.load(source)
            with open(source, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise ProblemFileError(f"Input is not valid JSON: {e}")

    # =========================================================================
    # Console Output Helpers
    # =========================================================================

    def _emit(self, text: str = ""):
        print(text, file=self.progress or sys.stderr)

    def _print_header(self, command: str):
        """Print pipeline header."""
        if not self.verbose:
            return
        self._emit()
        self._emit(Style.BRIGHT + "═" * 67 + Style.RESET_ALL)
        self._emit(f"       FRAME COMPLETION SOLVER - {command}")
        self._emit(Style.BRIGHT + "═" * 67 + Style.RESET_ALL)
        self._emit()

    def _print_stage(self, num: int, agent: str, desc: str):
        """Print stage information."""
        if not self.verbose:
            return
        self._emit(f"{Fore.CYAN}[{num}/{self._stage_total}]{Style.RESET_ALL} {agent}: {desc}")

    def _print_success(self, message: str):
        """Print success message."""
        if not self.verbose:
            return
        self._emit(f"      {Fore.GREEN}✓{Style.RESET_ALL} {message}")
        self._emit()

    def _print_failure(self, message: str):
        if not self.verbose:
            return
        self._emit(f"      {Fore.YELLOW}✗{Style.RESET_ALL} {message}")
        self._emit()

    def _print_error(self, message: str):
        """Print error message."""
        self._emit()
        self._emit(f"{Fore.RED}✗ ERROR:{Style.RESET_ALL} {message}")
        self._emit()

    def _print_summary(self, code: int, elapsed: float):
        """Print pipeline summary."""
        if not self.verbose:
            return
        if code == EXIT_CODES["ok"]:
            self._emit(f"{Fore.GREEN}✓ Completed successfully!{Style.RESET_ALL} (Time: {elapsed:.2f}s)")
        else:
            self._emit(f"{Fore.YELLOW}✗ Finished with exit code {code}{Style.RESET_ALL} (Time: {elapsed:.2f}s)")
        self._emit()


def _lambda_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", type=Path, default=None, help="Input JSON file (default: stdin)")
    common.add_argument("--output", "-o", type=Path, default=None, help="Report JSON file (default: stdout)")
    common.add_argument("--tol", type=float, default=FRAME_TOL, help=f"Synthesis tolerance (default: {FRAME_TOL})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for randomized fallbacks")
    common.add_argument("--quiet", "-q", action="store_true", help="Suppress progress output")
    common.add_argument("--debug", action="store_true", default=DEBUG, help="Enable debug logging")
    common.add_argument(
        "--lambda", dest="lam", type=_lambda_list, default=None,
        help="Target spectrum as comma-separated rationals, e.g. 5/2,7/4,3/2,3/2",
    )
    common.add_argument(
        "--construct-initial", action="store_true",
        help="Build the initial operator from zero along lifted eigensteps",
    )
    paths = common.add_mutually_exclusive_group()
    for mode in COMPLETION_MODES:
        paths.add_argument(f"--{mode}", dest="mode", action="store_const", const=mode)
    common.set_defaults(mode=DEFAULT_COMPLETION_MODE)

    parser = argparse.ArgumentParser(
        description="Frame Completion Solver - optimal spectra and explicit frame vectors",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python orchestrator.py check --input input/four_level.json --lambda 5/2,7/4,3/2,3/2
  python orchestrator.py complete --input input/four_level.json --naive
  python orchestrator.py synthesize --input input/tight_frame.json -o outputs/frame.json
  python orchestrator.py verify --input outputs/frame.json --quiet
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "check": "Test a target spectrum against the completion conditions",
        "complete": "Compute the majorization-minimal completion",
        "eigensteps": "Build and validate eigensteps to a target (default: optimal completion)",
        "synthesize": "Construct and verify frame vectors for a target",
        "verify": "Re-verify a synthesis report",
    }
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=helps[command])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    setup_logging(debug=args.debug)

    orchestrator = Orchestrator(
        mode=args.mode,
        tol=args.tol,
        seed=args.seed,
        construct_initial=args.construct_initial,
        verbose=not args.quiet,
    )
    return orchestrator.run(args.command, args.input, args.output, lam_override=args.lam)


if __name__ == "__main__":
    sys.exit(main())
