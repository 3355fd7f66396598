import sys

from dynfatigue.cli import main

sys.exit(main())
