import sys

from optstab.cli import main

sys.exit(main())
