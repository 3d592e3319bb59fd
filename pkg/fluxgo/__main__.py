from fluxgo.cli import main

raise SystemExit(main())
