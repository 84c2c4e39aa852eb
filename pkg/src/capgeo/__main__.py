from capgeo.cli import main

main()
