import sys

from zonoehr.cli import main

sys.exit(main())
