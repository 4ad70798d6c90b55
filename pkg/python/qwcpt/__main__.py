from qwcpt.cli import main

main()
