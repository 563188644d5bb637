"""
Command line front end: `betti-characters PROBLEM.json [options]`.
"""
import argparse
import io
import logging
import sys
from typing import Any, Dict, List, Optional, TextIO

import django
from django.conf import settings

from betti_characters.exceptions import BettiCharactersError
from betti_characters.limits import time_limit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SCHEMA = 3

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='betti-characters',
        description='Minimal free resolutions, Betti characters and module characters of finite group actions.',
    )
    parser.add_argument('problem', help='problem file (JSON)')
    parser.add_argument('--format', choices=['pretty', 'structured', 'both'], default='pretty',
                        help='what to write (default: pretty)')
    parser.add_argument('--output', metavar='FILE',
                        help='write the structured document to FILE instead of standard output')
    parser.add_argument('--check', choices=['molien'], action='append', default=[],
                        help='verify the Molien identity for every group element after the tasks')
    parser.add_argument('--degree-bound', type=int, metavar='N',
                        help='degrees for module characters without explicit degrees, and the Molien bound')
    parser.add_argument('--threads', type=int, default=1, metavar='K',
                        help='worker threads for lifting the group action (default: 1)')
    parser.add_argument('--timeout', type=float, metavar='SECONDS', help='abort after this many seconds')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='more logging; repeat for debug output')
    return parser


def configure_django() -> None:
    """
    The schema layer is built on Django REST framework serializers, which need configured settings.
    """
    if not settings.configured:
        settings.configure(USE_I18N=False)
    django.setup()


def configure_logging(verbosity: int, stream: Optional[TextIO] = None) -> None:
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    root = logging.getLogger('betti_characters')
    root.handlers[:] = [handler]
    root.setLevel(LOG_LEVELS[min(verbosity, len(LOG_LEVELS) - 1)])
    root.propagate = False


def format_validation_errors(errors: Any, prefix: str = '') -> List[str]:
    """
    Flatten nested serializer errors into `path: message` lines.
    """
    if isinstance(errors, dict):
        lines = []
        for key, value in errors.items():
            path = key if not prefix else ('{prefix}.{key}'.format(prefix=prefix, key=key)
                                           if key != 'non_field_errors' else prefix)
            lines += format_validation_errors(value, path)
        return lines
    if isinstance(errors, list):
        if all(isinstance(item, str) for item in errors):
            return ['{prefix}: {message}'.format(prefix=prefix, message=item) if prefix else str(item)
                    for item in errors]
        lines = []
        for index, item in enumerate(errors):
            if item:
                lines += format_validation_errors(item, '{prefix}[{index}]'.format(prefix=prefix, index=index))
        return lines
    return ['{prefix}: {message}'.format(prefix=prefix, message=errors) if prefix else str(errors)]


class ProblemFileError(BettiCharactersError):
    exit_code = EXIT_SCHEMA


def load_problem(path: str) -> Dict[str, Any]:
    from rest_framework.parsers import JSONParser

    try:
        with open(path, 'rb') as stream:
            data = JSONParser().parse(stream)
    except OSError as error:
        raise ProblemFileError("Cannot read {path}: {error}".format(path=path, error=error.strerror)) from error
    logger.info('Loaded problem file %s', path)
    return data


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Run a problem file and write its results. Nothing is written unless every task succeeded.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print('error: --threads must be at least 1', file=stderr)
        return EXIT_SCHEMA
    configure_django()
    configure_logging(args.verbose, stderr)

    from rest_framework import exceptions as drf_exceptions
    from rest_framework.renderers import JSONRenderer

    from betti_characters.problem import Session
    from betti_characters.render import render_pretty, render_structured
    from betti_characters.schema import ProblemSerializer

    try:
        with time_limit(args.timeout):
            serializer = ProblemSerializer(data=load_problem(args.problem))
            serializer.is_valid(raise_exception=True)
            session = Session(serializer.validated_data, threads=args.threads, degree_bound=args.degree_bound)
            report = session.run_all(check_molien='molien' in args.check)
            pretty = render_pretty(report)
            structured = JSONRenderer().render(render_structured(report), renderer_context={'indent': 2})
    except drf_exceptions.ValidationError as error:
        for line in format_validation_errors(error.detail):
            print('error: {line}'.format(line=line), file=stderr)
        return EXIT_SCHEMA
    except drf_exceptions.ParseError as error:
        print('error: {message}'.format(message=error.detail), file=stderr)
        return EXIT_SCHEMA
    except BettiCharactersError as error:
        print('error: {message}'.format(message=error), file=stderr)
        return error.exit_code

    if args.format in ('pretty', 'both'):
        stdout.write(pretty)
    text = structured.decode('utf-8') + '\n'
    if args.output:
        try:
            with io.open(args.output, 'w', encoding='utf-8') as output:
                output.write(text)
        except OSError as error:
            print('error: cannot write {path}: {error}'.format(path=args.output, error=error.strerror), file=stderr)
            return EXIT_SCHEMA
    elif args.format in ('structured', 'both'):
        stdout.write(text)
    return EXIT_OK


def main() -> int:
    return run()
