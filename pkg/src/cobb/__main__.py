import sys
from cobb.cli import main

sys.exit(main())
