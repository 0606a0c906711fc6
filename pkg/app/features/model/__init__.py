# Model Feature Package
