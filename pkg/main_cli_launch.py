import sys

from src.cli.core.convex_cli import main

sys.exit(main())
