namespace lt {}
