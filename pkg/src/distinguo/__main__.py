from distinguo.cli import main

main()
