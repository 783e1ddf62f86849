from flatlab._main import main

main()
