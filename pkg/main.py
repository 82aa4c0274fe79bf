import sys
import logging
import argparse
import signal

from utils.logging_config import setup_logging
from utils.env_loader import load_environment_variables
from utils.error_handler import ErrorHandler, EXIT_OK, EXIT_FAILURE
from utils.performance import shutdown_executors
from utils.report_writer import ReportWriter
from exceptions import JobSpecError

# Global logger
logger = logging.getLogger(__name__)


class JobArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors share one exit path."""

    def error(self, message):
        raise JobSpecError(message)


def add_common_arguments(parser, positional=False):
    """Algebra selection and output flags shared by every subcommand."""
    if positional:
        parser.add_argument("type", help="Cartan type letter of g (A-G)")
        parser.add_argument("rank", type=int, help="Rank of g")
    else:
        parser.add_argument("--type", default="A", help="Cartan type letter of g (A-G)")
        parser.add_argument("--rank", type=int, default=1, help="Rank of g")
    parser.add_argument("--perm", help="Diagram automorphism as 1-based node images, e.g. 2,1")
    parser.add_argument("--lambda", dest="lam", help="Dominant weight, comma-separated")
    parser.add_argument("--chi", help='Function on points as JSON, e.g. {"1": [1, 0], "-1": [0, 1]}')
    parser.add_argument("--symmetrize", action="store_true", help="Complete --chi to an equivariant function")
    parser.add_argument("--depth", type=int, help="First truncation depth")
    parser.add_argument("--bound", type=int, help="Loop degree bound")
    parser.add_argument("--samples", type=int, help="Number of sampled functions")
    parser.add_argument("--seed", type=int, help="Seed for sampled functions")
    parser.add_argument("--matrices", action="store_true", help="Include action matrices or bracket tables")
    parser.add_argument("--format", choices=["json", "csv", "text"], help="Output format")
    parser.add_argument("--out", help="Output file (stdout when missing)")
    parser.add_argument("--verbose", action="store_true", help="Log DEBUG records to stderr")


def build_parser():
    parser = JobArgumentParser(prog="weyl", description="Weyl modules for twisted loop algebras")
    subparsers = parser.add_subparsers(dest="command", parser_class=JobArgumentParser)

    fold_parser = subparsers.add_parser("fold", help="Folded root data of (g, sigma)")
    add_common_arguments(fold_parser, positional=True)

    algebra_parser = subparsers.add_parser("algebra", help="Chevalley basis and graded pieces")
    add_common_arguments(algebra_parser, positional=True)

    weyl_parser = subparsers.add_parser("weyl", help="Build a local Weyl module")
    add_common_arguments(weyl_parser)

    xi_parser = subparsers.add_parser("xi", help="Equivariance, admissible restriction and multisets of --chi")
    add_common_arguments(xi_parser)

    hwalg_parser = subparsers.add_parser("hwalg", help="Highest-weight algebra generators and evaluations")
    add_common_arguments(hwalg_parser)

    verify_parser = subparsers.add_parser("verify", help="Run a verification suite")
    verify_parser.add_argument("suite", choices=["garland", "embedding", "hwalg", "jacobi"])
    add_common_arguments(verify_parser)
    return parser


def setup_signal_handlers():
    """Stop worker threads on SIGTERM."""

    def signal_handler(sig, frame):
        logger.info("Received termination signal, shutting down")
        shutdown_executors()
        sys.exit(EXIT_FAILURE)

    signal.signal(signal.SIGTERM, signal_handler)


def run(argv=None):
    """Parse argv, run one job and write its report; returns the exit code."""
    from cli.commands import run_job
    from cli.formatters import render
    from cli.job_spec import JobSpec

    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise JobSpecError("a command is required (fold, algebra, weyl, xi, hwalg, verify)")
        env = load_environment_variables()
        console_level = logging.DEBUG if args.verbose else env.get("LOG_LEVEL")
        setup_logging(verbose=args.verbose, console_level=console_level)
        spec = JobSpec.from_namespace(args, {"max_depth": env["MAX_DEPTH"]})
        report = run_job(spec)
        ReportWriter().write(render(report), spec.out)
        return EXIT_OK if report.passed else EXIT_FAILURE
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_FAILURE
    except Exception as e:
        return ErrorHandler.handle_exception(e, lambda message: print(message, file=sys.stderr))
    finally:
        shutdown_executors()


def main():
    """Main entry point for the application."""
    setup_logging(log_to_file=False)
    setup_signal_handlers()
    return run()


if __name__ == "__main__":
    sys.exit(main())
