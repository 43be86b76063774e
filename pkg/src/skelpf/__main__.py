from skelpf.cli import main

main()
