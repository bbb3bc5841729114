namespace trackalg {}
