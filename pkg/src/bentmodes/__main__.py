import sys

from bentmodes.cli import main

sys.exit(main())
