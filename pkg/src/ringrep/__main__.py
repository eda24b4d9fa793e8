from ringrep.cli import main

main()
