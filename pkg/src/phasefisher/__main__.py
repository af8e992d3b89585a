"""Entry point for ``python -m phasefisher``."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
