#!/usr/bin/env python
"""Command-line entry point for the root statistics lab (experiments run as management commands)."""
import os
import sys


def main():
    """Run a lab command."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the lab requirements with "
            "`pip install -r requirements.txt` inside your virtual environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
