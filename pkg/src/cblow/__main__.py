from cblow.cli import main

main()
