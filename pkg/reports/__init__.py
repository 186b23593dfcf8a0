# Report and table rendering
