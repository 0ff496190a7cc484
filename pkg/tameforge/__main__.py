from tameforge.cli import main

raise SystemExit(main())
