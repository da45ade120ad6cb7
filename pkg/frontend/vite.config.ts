import { defineConfig } from 'vite'

// all /api-ish paths proxy to a locally running service (dualarm serve)
const service = 'http://127.0.0.1:8000'

export default defineConfig({
  server: {
    proxy: {
      '/config': service,
      '/fk': service,
      '/ik': service,
      '/skeleton': service,
      '/design': service,
      '/plan': service,
      '/game': service,
      '/events': { target: service, ws: true },
    },
  },
  test: {
    environment: 'node',
    include: ['tests/**/*.test.ts'],
  },
})
