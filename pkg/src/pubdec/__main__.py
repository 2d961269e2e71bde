import sys

from pubdec.cli import main

sys.exit(main())
