import sys

from dqrrr.cli import main

sys.exit(main())
