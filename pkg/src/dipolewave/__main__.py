import sys

from dipolewave.cli import main

sys.exit(main())
