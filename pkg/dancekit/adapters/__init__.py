# DANCEKIT Output Adapters
# Renderers and report writers that turn analysis results into files
