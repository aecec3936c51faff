# Batch jobs package initialization
