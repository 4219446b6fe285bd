from orl.main import main

main()
