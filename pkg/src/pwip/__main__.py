import sys

from pwip.cli import main

sys.exit(main())
