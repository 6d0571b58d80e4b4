import sys

from wbansim.cli import main

sys.exit(main())
