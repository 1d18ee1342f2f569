"""
Shared pieces of the console scripts
"""
import functools
import json
import sys
from PCGLabPy.core.errors import PCGLabError


def error_payload(err):
    return dict(error=type(err).__name__, message=str(err))


def handle_errors(main):
    """
    Decorator for the `main` of an executable: PCGLabPy, OS, value and key
    errors are reported on stderr as one JSON object and the process exits
    with status 1.
    """
    @functools.wraps(main)
    def wrapper(*args, **kwargs):
        try:
            return main(*args, **kwargs)
        except (PCGLabError, OSError, ValueError, KeyError) as err:
            print(json.dumps(error_payload(err), sort_keys=True),
                  file=sys.stderr)
            sys.exit(1)
    return wrapper


def add_threads_argument(parser):
    parser.add_argument('-t', '--threads', dest='threads', action='store',
                        default=1, type=int,
                        help='Number of worker processes')


def add_config_argument(parser):
    parser.add_argument('-c', '--config', dest='config_path', action='store',
                        default=None,
                        help='Path to the run configuration (YAML or JSON)')
