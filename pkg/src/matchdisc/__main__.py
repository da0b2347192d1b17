"""Allow ``python -m matchdisc``."""
import sys

from .cli import main

sys.exit(main())
